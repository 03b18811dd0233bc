//! Acceptance run: one PASS/FAIL line per criterion, non-zero exit on any failure.

mod common;

use std::collections::{BTreeMap, BTreeSet};
use std::process::Command;
use std::time::{Duration, Instant};

use hyperdelta::constructions::{verify_counterexample, Conclusion, VerifyMode};
use hyperdelta::delta::{complete_semi, is_avd, is_semi_avb};
use hyperdelta::extremal::{max_avoiding, ForbiddenConfig};
use hyperdelta::intersecting::{find_nontrivial_subfamily, is_d_simplex, is_nontrivial};
use hyperdelta::intersection::{extract_homogeneous, is_homogeneous, DEFAULT_RESTARTS};
use hyperdelta::{build_counterexample, build_triple_system, Budget, DesignSpec, Hypergraph, VertexSet};
use num::{BigInt, BigRational, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

use common::*;

type Outcome = Result<String, String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(start: Instant, limit: Duration) -> Result<(), String> {
    let t = start.elapsed();
    ensure(t < limit, || format!("took {t:?}, limit {limit:?}"))
}

fn pair_codegrees(h: &Hypergraph) -> BTreeMap<(u32, u32), usize> {
    let mut out = BTreeMap::new();
    for a in 1..=h.n() as u32 {
        for b in a + 1..=h.n() as u32 {
            let c = h.edges().iter().filter(|e| e.contains(a) && e.contains(b)).count();
            out.insert((a, b), c);
        }
    }
    out
}

fn binom(n: usize, r: usize) -> usize {
    (0..r).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// Distinct `r`-subsets of edges, by direct enumeration.
fn level_set_size(h: &Hypergraph, r: usize) -> usize {
    let mut seen = BTreeSet::new();
    for &e in h.edges() {
        let vs: Vec<u32> = e.iter().collect();
        for idx in index_subsets(vs.len(), r) {
            seen.insert(idx.iter().map(|&i| vs[i]).collect::<Vec<_>>());
        }
    }
    seen.len()
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let (s_hat, _) = build_counterexample(9, 4, 0).map_err(|e| e.to_string())?;
    let (n, m) = (9usize, 4usize);
    let expected = (m - 1) * binom(n, 2) / 3 + n / 3;
    ensure(s_hat.len() == 39 && expected == 39, || format!("{} edges, formula {expected}", s_hat.len()))?;
    let codeg = pair_codegrees(&s_hat);
    let max = codeg.values().copied().max().unwrap();
    ensure(max == 4, || format!("max codegree {max}"))?;
    let heavy: Vec<(u32, u32)> = codeg.iter().filter(|(_, &c)| c == 4).map(|(&p, _)| p).collect();
    let mut adj: BTreeMap<u32, BTreeSet<u32>> = BTreeMap::new();
    for &(a, b) in &heavy {
        adj.entry(a).or_default().insert(b);
        adj.entry(b).or_default().insert(a);
    }
    let mut triangles = BTreeSet::new();
    for (&v, nb) in &adj {
        ensure(nb.len() == 2, || format!("vertex {v} meets {} heavy pairs", nb.len()))?;
        let (x, y) = (*nb.first().unwrap(), *nb.last().unwrap());
        ensure(adj[&x].contains(&y), || format!("heavy pairs at {v} do not close a triangle"))?;
        let mut t = [v, x, y];
        t.sort();
        triangles.insert(t);
    }
    ensure(heavy.len() == 9 && triangles.len() == 3 && adj.len() == 9, || {
        format!("{} heavy pairs, {} triangles", heavy.len(), triangles.len())
    })?;
    within(start, Duration::from_secs(60))?;
    Ok(format!("39 edges, max codegree 4, 3 disjoint triangles, {:?}", start.elapsed()))
}

fn criterion_2() -> Outcome {
    let start = Instant::now();
    let (s_hat, _) = build_counterexample(9, 4, 0).map_err(|e| e.to_string())?;
    let budget = Budget::default();
    let out = find_nontrivial_subfamily(&s_hat, 13, 2, &budget).map_err(|e| e.to_string())?;
    if out.is_not_found() {
        within(start, Duration::from_secs(600))?;
        return Ok(format!("exhaustive search: none, {} nodes, {:?}", budget.used(), start.elapsed()));
    }
    ensure(out.is_exhausted(), || "search found a 13-edge non-trivial intersecting subfamily".into())?;
    let rep = verify_counterexample(&s_hat, 4, VerifyMode::Both, &Budget::default()).map_err(|e| e.to_string())?;
    ensure(rep.checks.len() == 3 && rep.checks.iter().all(|c| c.passed), || format!("{:?}", rep.checks))?;
    ensure(rep.conclusion == Conclusion::Conditional, || format!("{:?}", rep.conclusion))?;
    Ok("budget exhausted; degree checks pass, labelled conditional".into())
}

fn criterion_3() -> Outcome {
    let mut notes = Vec::new();
    for (n, want) in [(5usize, 6usize), (6, 10)] {
        let start = Instant::now();
        let cfg = ForbiddenConfig::NontrivialIntersecting { t: 3, d: 2 };
        let r = max_avoiding(n, 3, &cfg, &Budget::default()).map_err(|e| e.to_string())?;
        ensure(r.exact && r.revalidated, || format!("n={n}: exact={} revalidated={}", r.exact, r.revalidated))?;
        ensure(r.max_size == want && want == binom(n - 1, 2), || format!("n={n}: max {}", r.max_size))?;
        for fam in &r.families {
            let common = fam.iter().fold(VertexSet::full(n), |acc, e| acc.intersection(*e));
            ensure(!common.is_empty(), || format!("n={n}: extremal family without a common vertex: {fam:?}"))?;
        }
        ensure(!r.families.is_empty(), || format!("n={n}: no families kept"))?;
        within(start, Duration::from_secs(300))?;
        notes.push(format!("n={n}: {} ({} star families)", r.max_size, r.families.len()));
    }
    Ok(notes.join(", "))
}

fn criterion_4() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for i in 0..200 {
        let n = rng.gen_range(4..=12);
        let k = if rng.gen_bool(0.5) { 3 } else { 4 };
        let p = rng.gen_range(0.02..0.6);
        let h = random_hypergraph(&mut rng, n, k, p);
        let mut sum = BigRational::zero();
        for &e in h.edges() {
            sum += h.edge_weight(e).map_err(|e| e.to_string())?;
        }
        let shadow = level_set_size(&h, k - 1);
        ensure(sum == BigRational::from_integer(BigInt::from(shadow)), || {
            format!("case {i}: weight sum {sum} vs shadow {shadow}")
        })?;
    }
    Ok("200/200 exact".into())
}

fn criterion_5() -> Outcome {
    let shapes: [&[usize]; 4] = [&[2, 1], &[2, 2], &[3, 1], &[2, 1, 1]];
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for i in 0..100 {
        let a = shapes[i % 4];
        let b: Vec<usize> = a.iter().map(|_| rng.gen_range(1..=3)).collect();
        let mut c = Vec::new();
        let mut prefix = 0;
        for j in 0..a.len() {
            c.push(b[j] + prefix + rng.gen_range(0..=2));
            prefix += a[j] * b[j];
        }
        let semi = random_semi_witness(&mut rng, a, &c);
        ensure(is_semi_avb(&semi).map_err(|e| e.to_string())?.holds(), || format!("case {i}: generator broke"))?;
        let full = complete_semi(&semi, &b).map_err(|e| format!("case {i}: {e}"))?;
        let d: usize = b.iter().sum();
        ensure(is_avd(&full, d).map_err(|e| e.to_string())?.holds(), || format!("case {i}: output fails is_avd"))?;
    }
    Ok("100/100 completed".into())
}

fn criterion_6() -> Outcome {
    let start = Instant::now();
    let all: Vec<VertexSet> = VertexSet::full(6).subsets_of_size(3).collect();
    let mut checked = 0;
    for d in [2usize, 3] {
        for idx in index_subsets(all.len(), d + 1) {
            let fam: Vec<VertexSet> = idx.iter().map(|&i| all[i]).collect();
            let simplex = is_d_simplex(&fam, d).map_err(|e| e.to_string())?;
            let nontrivial = is_nontrivial(&fam, d).map_err(|e| e.to_string())?.holds();
            ensure(simplex == nontrivial, || format!("d={d}: {fam:?}"))?;
            checked += 1;
        }
    }
    within(start, Duration::from_secs(120))?;
    Ok(format!("{checked} families, no discrepancy"))
}

fn criterion_7() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut done = 0;
    while done < 100 {
        let n = rng.gen_range(3..=12);
        let k = if n >= 4 && rng.gen_bool(0.3) { 4 } else { 3 };
        let p = rng.gen_range(0.1..0.8);
        let h = random_hypergraph(&mut rng, n, k, p);
        if h.is_empty() {
            continue;
        }
        let s = rng.gen_range(2..=3);
        let seed = rng.gen();
        let c = extract_homogeneous(&h, s, seed, DEFAULT_RESTARTS).map_err(|e| format!("case {done}: {e}"))?;
        ensure(c.subgraph.edges().iter().all(|e| h.contains(*e)), || format!("case {done}: foreign edge"))?;
        let check = is_homogeneous(&c.subgraph, s, &c.partition).map_err(|e| e.to_string())?;
        ensure(check.certificate().is_some(), || format!("case {done}: not homogeneous"))?;
        let r = c.rank();
        let level = level_set_size(&c.subgraph, r);
        ensure(c.subgraph.len() <= level, || format!("case {done}: |H|={} > {level} at rank {r}", c.subgraph.len()))?;
        done += 1;
    }
    Ok("100/100 certified".into())
}

fn criterion_8() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for i in 0..100 {
        let a: Vec<usize> = (0..3).map(|_| rng.gen_range(1..=2)).collect();
        let b: Vec<usize> = (0..3).map(|_| rng.gen_range(1..=3)).collect();
        let d: usize = b.iter().sum();
        let w = random_avd_witness(&mut rng, &a, &b);
        ensure(is_avd(&w, d).map_err(|e| e.to_string())?.holds(), || format!("case {i}: generator broke"))?;
        let edges = w.edges();
        ensure(edges.len() == d + 1, || format!("case {i}: {} edges", edges.len()))?;
        ensure(is_nontrivial(&edges, 2).map_err(|e| e.to_string())?.holds(), || format!("case {i}: {edges:?}"))?;
    }
    Ok("100/100".into())
}

fn criterion_9() -> Outcome {
    let start = Instant::now();
    let spec = DesignSpec::new(9, 3).map_err(|e| e.to_string())?;
    let h = build_triple_system(spec, 0).map_err(|e| e.to_string())?;
    ensure(h.len() == 36 && h.k() == 3 && h.n() == 9, || format!("{} triples", h.len()))?;
    let codeg = pair_codegrees(&h);
    ensure(codeg.values().all(|&c| c == 3), || format!("codegrees {codeg:?}"))?;
    within(start, Duration::from_secs(300))?;
    Ok(format!("36 triples, all 36 pairs codegree 3, {:?}", start.elapsed()))
}

fn criterion_10() -> Outcome {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let h = random_hypergraph(&mut rng, 9, 3, 0.4);
    let path = dir.path().join("h.txt");
    std::fs::write(&path, hyperdelta::serialize_hypergraph(&h)).map_err(|e| e.to_string())?;
    let p = path.to_str().unwrap();
    let runs: Vec<Vec<&str>> = vec![
        vec!["build-counterexample", "--n", "9", "--m", "4"],
        vec!["verify-counterexample", "--n", "9", "--m", "4"],
        vec!["build-steiner", "--n", "9", "--lambda", "3"],
        vec!["extremal", "--n", "6", "--k", "3", "--config", "nontrivial", "--t", "3", "--d", "2"],
        vec!["find-avd", p, "--a", "2,1", "--d", "3"],
        vec!["find-nontrivial", p, "--size", "6", "--wise", "2"],
        vec!["homogeneous-extract", p, "--s", "2"],
        vec!["shadow", p],
        vec!["weight-check", p],
    ];
    for args in &runs {
        let mut reports = Vec::new();
        for threads in ["1", "4"] {
            let out = Command::new(env!("CARGO_BIN_EXE_hyperdelta"))
                .args(["--seed", "11", "--threads", threads])
                .args(args)
                .output()
                .map_err(|e| e.to_string())?;
            let mut v: Value = serde_json::from_slice(&out.stdout).map_err(|e| format!("{args:?}: {e}"))?;
            v.as_object_mut().ok_or("report is not an object")?.remove("stats");
            reports.push(v);
        }
        ensure(reports[0] == reports[1], || format!("{args:?} differs across thread counts"))?;
    }
    Ok(format!("{} commands identical at 1 and 4 threads", runs.len()))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("counterexample construction", criterion_1),
        ("counterexample exhaustive check", criterion_2),
        ("extremal numbers n=5,6", criterion_3),
        ("weight identity", criterion_4),
        ("semi-system completion", criterion_5),
        ("simplex equivalence", criterion_6),
        ("homogeneous extraction", criterion_7),
        ("wide systems are non-trivial", criterion_8),
        ("triple system validity", criterion_9),
        ("thread-count determinism", criterion_10),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        match run() {
            Ok(note) => println!("PASS criterion {:>2} {name}: {note}", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL criterion {:>2} {name}: {why}", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
