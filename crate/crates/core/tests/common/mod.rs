//! Generators and brute-force oracles shared by the integration tests.
#![allow(dead_code)]

use hyperdelta::delta::AvdWitness;
use hyperdelta::intersecting::is_nontrivial;
use hyperdelta::{Hypergraph, VertexSet};
use rand::seq::SliceRandom;
use rand::Rng;

/// Random `k`-graph on `[n]` keeping each `k`-set with probability `p`.
pub fn random_hypergraph<R: Rng>(rng: &mut R, n: usize, k: usize, p: f64) -> Hypergraph {
    let edges: Vec<VertexSet> = VertexSet::full(n)
        .subsets_of_size(k)
        .filter(|_| rng.gen_bool(p))
        .collect();
    Hypergraph::new(n, k, edges).unwrap()
}

/// Random `k`-graph on `[n]` with exactly `m` edges (capped at `C(n,k)`).
pub fn random_hypergraph_m<R: Rng>(rng: &mut R, n: usize, k: usize, m: usize) -> Hypergraph {
    let mut all: Vec<VertexSet> = VertexSet::full(n).subsets_of_size(k).collect();
    all.shuffle(rng);
    all.truncate(m);
    Hypergraph::new(n, k, all).unwrap()
}

/// All `r`-element index subsets of `0..len`, lexicographically.
pub fn index_subsets(len: usize, r: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, len: usize, r: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == r {
            out.push(cur.clone());
            return;
        }
        for i in start..len {
            if len - i < r - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, len, r, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, len, r, &mut Vec::new(), &mut out);
    out
}

/// Naive: does some `t`-subset of `edges` form a non-trivial `d`-wise
/// intersecting family?
pub fn naive_has_nontrivial(edges: &[VertexSet], t: usize, d: usize) -> bool {
    index_subsets(edges.len(), t).into_iter().any(|idx| {
        let fam: Vec<VertexSet> = idx.iter().map(|&i| edges[i]).collect();
        is_nontrivial(&fam, d).unwrap().holds()
    })
}

/// Direct intersection test of every `≤ d` subfamily, for cross-checking.
pub fn naive_dwise(edges: &[VertexSet], d: usize) -> bool {
    (1..=d.min(edges.len())).all(|r| {
        index_subsets(edges.len(), r).into_iter().all(|idx| {
            idx.iter()
                .map(|&i| edges[i])
                .reduce(VertexSet::intersection)
                .is_some_and(|c| !c.is_empty())
        })
    })
}

/// Naive: does `edges` contain an `(a, d)`-Δ-system? For every host, every
/// ordered `a`-partition (no canonicalization) and every `d`-subset of the
/// other edges, assign each edge to the part determined by its
/// intersection with the host and test the definition directly.
pub fn naive_has_avd(edges: &[VertexSet], a: &[usize], d: usize) -> bool {
    let k: usize = a.iter().sum();
    for (hi, &host) in edges.iter().enumerate() {
        let others: Vec<VertexSet> = edges.iter().enumerate().filter(|&(i, _)| i != hi).map(|(_, &e)| e).collect();
        let parts_list = all_ordered_partitions(host, a);
        for parts in &parts_list {
            for idx in index_subsets(others.len(), d) {
                let mut counts = vec![0usize; a.len()];
                let mut residues = VertexSet::EMPTY;
                let mut ok = true;
                for &i in &idx {
                    let e = others[i];
                    let meet = e.intersection(host);
                    match parts.iter().position(|&p| host.difference(p) == meet) {
                        Some(g) => counts[g] += 1,
                        None => {
                            ok = false;
                            break;
                        }
                    }
                    let r = e.difference(host);
                    if r.len() + meet.len() != k || r.intersects(residues) {
                        ok = false;
                        break;
                    }
                    residues = residues.union(r);
                }
                if ok && counts.iter().all(|&c| c > 0) {
                    return true;
                }
            }
        }
    }
    false
}

/// Every ordered partition of `host` with part sizes `a`.
pub fn all_ordered_partitions(host: VertexSet, a: &[usize]) -> Vec<Vec<VertexSet>> {
    fn rec(rest: VertexSet, a: &[usize], cur: &mut Vec<VertexSet>, out: &mut Vec<Vec<VertexSet>>) {
        if cur.len() == a.len() {
            out.push(cur.clone());
            return;
        }
        for p in rest.subsets_of_size(a[cur.len()]) {
            cur.push(p);
            rec(rest.difference(p), a, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(host, a, &mut Vec::new(), &mut out);
    out
}

/// An `(a, b)`-Δ-system on fresh vertices: host `{1..k}` split into
/// consecutive-after-shuffle parts, each group edge taking a new residue.
pub fn random_avd_witness<R: Rng>(rng: &mut R, a: &[usize], b: &[usize]) -> AvdWitness {
    let k: usize = a.iter().sum();
    let mut host_vertices: Vec<u32> = (1..=k as u32).collect();
    host_vertices.shuffle(rng);
    let mut parts = Vec::new();
    let mut at = 0;
    for &ai in a {
        parts.push(host_vertices[at..at + ai].iter().copied().collect::<VertexSet>());
        at += ai;
    }
    let host = VertexSet::full(k);
    let mut next = k as u32 + 1;
    let mut groups = Vec::new();
    for (i, &bi) in b.iter().enumerate() {
        let center = host.difference(parts[i]);
        let mut g = Vec::new();
        for _ in 0..bi {
            let residue: VertexSet = (next..next + a[i] as u32).collect();
            next += a[i] as u32;
            g.push(center.union(residue));
        }
        groups.push(g);
    }
    AvdWitness { host, parts, groups }
}

/// A semi-`(a, c)`-Δ-system: within each group residues are disjoint, but
/// residues are drawn from a shared pool so groups collide.
pub fn random_semi_witness<R: Rng>(rng: &mut R, a: &[usize], c: &[usize]) -> AvdWitness {
    let k: usize = a.iter().sum();
    let host = VertexSet::full(k);
    let mut host_vertices: Vec<u32> = (1..=k as u32).collect();
    host_vertices.shuffle(rng);
    let mut parts = Vec::new();
    let mut at = 0;
    for &ai in a {
        parts.push(host_vertices[at..at + ai].iter().copied().collect::<VertexSet>());
        at += ai;
    }
    let pool_size = a.iter().zip(c).map(|(x, y)| x * y).max().unwrap() + 3;
    let pool: Vec<u32> = (k as u32 + 1..=(k + pool_size) as u32).collect();
    let mut groups = Vec::new();
    for (i, &ci) in c.iter().enumerate() {
        let center = host.difference(parts[i]);
        let mut shuffled = pool.clone();
        shuffled.shuffle(rng);
        let g: Vec<VertexSet> = shuffled
            .chunks(a[i])
            .take(ci)
            .map(|ch| center.union(ch.iter().copied().collect()))
            .collect();
        assert_eq!(g.len(), ci);
        groups.push(g);
    }
    AvdWitness { host, parts, groups }
}
