//! Stars, simple λ-fold triple systems, perfect matchings and the
//! design-plus-matching construction together with its verification.

use std::collections::{BTreeMap, HashSet};

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{param, Error, Result};
use crate::hypergraph::Hypergraph;
use crate::intersecting::{find_nontrivial_subfamily, FamilyWitness, KmTag};
use crate::outcome::{Budget, SearchStatus};
use crate::vertex_set::VertexSet;

/// Node limit for each design-search method.
const DESIGN_NODE_LIMIT: u64 = 20_000_000;

/// All `k`-sets containing vertex 1.
pub fn build_star(n: usize, k: usize) -> Result<Hypergraph> {
    let all = Hypergraph::complete(n, k)?;
    Ok(all.filter(|e| e.contains(1)))
}

/// Parameters of a simple triple system in which every pair lies in
/// exactly `lambda` triples.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct DesignSpec {
    n: usize,
    lambda: usize,
}

impl DesignSpec {
    pub fn new(n: usize, lambda: usize) -> Result<Self> {
        if n < 3 || n > 64 {
            return Err(Error::Admissibility(format!("n={n} outside 3..=64")));
        }
        if lambda == 0 {
            return Err(Error::Admissibility("lambda must be positive".into()));
        }
        if (lambda * n * (n - 1)) % 6 != 0 {
            return Err(Error::Admissibility(format!(
                "lambda*n*(n-1) = {} is not divisible by 6",
                lambda * n * (n - 1)
            )));
        }
        if (lambda * (n - 1)) % 2 != 0 {
            return Err(Error::Admissibility(format!("lambda*(n-1) = {} is odd", lambda * (n - 1))));
        }
        if lambda > n - 2 {
            return Err(Error::Admissibility(format!(
                "a simple design has at most n-2 = {} triples per pair, lambda={lambda}",
                n - 2
            )));
        }
        Ok(DesignSpec { n, lambda })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn lambda(&self) -> usize {
        self.lambda
    }

    /// `λ n (n-1) / 6`.
    pub fn block_count(&self) -> usize {
        self.lambda * self.n * (self.n - 1) / 6
    }
}

/// How a triple system was obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum DesignMethod {
    /// Union of `λ` pairwise disjoint Steiner triple systems.
    DisjointUnion,
    /// Orbits of base blocks under the cyclic group, then relabelled.
    CyclicDifferenceFamily,
    /// Exact pair-cover backtracking.
    DirectSearch,
}

pub fn build_triple_system(spec: DesignSpec, seed: u64) -> Result<Hypergraph> {
    build_triple_system_with_method(spec, seed).map(|(h, _)| h)
}

/// Tries, in order: a union of disjoint Steiner systems (when `λ > 1` and
/// `n ≡ 1, 3 mod 6`), a cyclic difference family, and direct search.
pub fn build_triple_system_with_method(spec: DesignSpec, seed: u64) -> Result<(Hypergraph, DesignMethod)> {
    let n = spec.n;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    if spec.lambda > 1 && matches!(n % 6, 1 | 3) {
        if let Some(blocks) = disjoint_union(n, spec.lambda, &mut rng) {
            return Ok((Hypergraph::new(n, 3, blocks)?, DesignMethod::DisjointUnion));
        }
    }
    if let Some(blocks) = cyclic_design(n, spec.lambda) {
        let mut perm: Vec<u32> = (1..=n as u32).collect();
        perm.shuffle(&mut rng);
        let relabelled = blocks.into_iter().map(|b| b.relabel(&perm));
        return Ok((Hypergraph::new(n, 3, relabelled)?, DesignMethod::CyclicDifferenceFamily));
    }
    let mut cover = PairCover::new(n, &HashSet::new(), &mut rng);
    match cover.solve(spec.lambda) {
        Some(blocks) => Ok((Hypergraph::new(n, 3, blocks)?, DesignMethod::DirectSearch)),
        None => Err(Error::SearchFailure(format!(
            "no simple ({n},3,{}) design found within {DESIGN_NODE_LIMIT} nodes",
            spec.lambda
        ))),
    }
}

fn disjoint_union(n: usize, lambda: usize, rng: &mut ChaCha8Rng) -> Option<Vec<VertexSet>> {
    for _attempt in 0..8 {
        let mut used: HashSet<VertexSet> = HashSet::new();
        let mut ok = true;
        for _ in 0..lambda {
            let mut cover = PairCover::new(n, &used, rng);
            match cover.solve(1) {
                Some(blocks) => used.extend(blocks),
                None => {
                    ok = false;
                    break;
                }
            }
        }
        if ok {
            let mut out: Vec<VertexSet> = used.into_iter().collect();
            out.sort_unstable();
            return Some(out);
        }
    }
    None
}

/// Exact search for a set of triples covering every pair exactly `λ` times.
/// Branches on the pair with the fewest usable triples; a triple rejected in
/// one branch stays banned for the remaining siblings, so every block set is
/// visited once.
struct PairCover {
    n: usize,
    triples: Vec<VertexSet>,
    /// triple ids per pair index
    through: Vec<Vec<usize>>,
    pairs_of: Vec<[usize; 3]>,
    need: Vec<usize>,
    state: Vec<TripleState>,
    chosen: Vec<usize>,
    nodes: u64,
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum TripleState {
    Free,
    Chosen,
    Banned,
}

impl PairCover {
    fn new(n: usize, forbidden: &HashSet<VertexSet>, rng: &mut ChaCha8Rng) -> Self {
        let mut triples: Vec<VertexSet> = VertexSet::full(n)
            .subsets_of_size(3)
            .filter(|t| !forbidden.contains(t))
            .collect();
        triples.shuffle(rng);
        let pair_index = |a: u32, b: u32| (a as usize - 1) * n + (b as usize - 1);
        let mut through = vec![Vec::new(); n * n];
        let mut pairs_of = Vec::with_capacity(triples.len());
        for (id, t) in triples.iter().enumerate() {
            let v = t.to_vec();
            let ps = [pair_index(v[0], v[1]), pair_index(v[0], v[2]), pair_index(v[1], v[2])];
            for &p in &ps {
                through[p].push(id);
            }
            pairs_of.push(ps);
        }
        let state = vec![TripleState::Free; triples.len()];
        PairCover {
            n,
            triples,
            through,
            pairs_of,
            need: Vec::new(),
            state,
            chosen: Vec::new(),
            nodes: 0,
        }
    }

    fn solve(&mut self, lambda: usize) -> Option<Vec<VertexSet>> {
        let n = self.n;
        self.need = vec![0; n * n];
        for a in 0..n {
            for b in a + 1..n {
                self.need[a * n + b] = lambda;
            }
        }
        if self.dfs() {
            let mut out: Vec<VertexSet> = self.chosen.iter().map(|&i| self.triples[i]).collect();
            out.sort_unstable();
            Some(out)
        } else {
            None
        }
    }

    fn usable(&self, id: usize) -> bool {
        self.state[id] == TripleState::Free && self.pairs_of[id].iter().all(|&p| self.need[p] > 0)
    }

    fn dfs(&mut self) -> bool {
        self.nodes += 1;
        if self.nodes > DESIGN_NODE_LIMIT {
            return false;
        }
        let mut best: Option<(usize, usize)> = None;
        for p in 0..self.need.len() {
            if self.need[p] == 0 {
                continue;
            }
            let options = self.through[p].iter().filter(|&&id| self.usable(id)).count();
            if options < self.need[p] {
                return false;
            }
            let slack = options - self.need[p];
            if best.map_or(true, |(s, _)| slack < s) {
                best = Some((slack, p));
            }
        }
        let Some((_, p)) = best else {
            return true;
        };
        let options: Vec<usize> = self.through[p].iter().copied().filter(|&id| self.usable(id)).collect();
        let mut banned = Vec::new();
        let mut found = false;
        for id in options {
            if !self.usable(id) {
                continue;
            }
            self.state[id] = TripleState::Chosen;
            for q in self.pairs_of[id] {
                self.need[q] -= 1;
            }
            self.chosen.push(id);
            if self.dfs() {
                found = true;
                break;
            }
            self.chosen.pop();
            for q in self.pairs_of[id] {
                self.need[q] += 1;
            }
            self.state[id] = TripleState::Banned;
            banned.push(id);
            if self.nodes > DESIGN_NODE_LIMIT {
                break;
            }
        }
        for id in banned {
            self.state[id] = TripleState::Free;
        }
        found
    }
}

/// Simple λ-fold triple system on `Z_n` (vertices `1..=n`) from a family of
/// base blocks whose orbits cover each difference class `λ` times.
fn cyclic_design(n: usize, lambda: usize) -> Option<Vec<VertexSet>> {
    let classes = n / 2;
    let class = |d: usize| {
        let d = d % n;
        d.min(n - d)
    };
    // coverage of a difference class by one full orbit containing a pair of that class
    let weight = |c: usize| if 2 * c == n { 2 } else { 1 };
    let mut deficit = vec![lambda; classes + 1];
    deficit[0] = 0;
    let mut bases: Vec<[usize; 3]> = Vec::new();
    if n % 3 == 0 {
        // the short orbit {0, n/3, 2n/3} covers its class once
        deficit[n / 3] = deficit[n / 3].checked_sub(1)?;
        bases.push([0, n / 3, 2 * n / 3]);
        if let Some(found) = cyclic_search(n, &mut deficit, &mut bases, &class, &weight, &mut 0) {
            return Some(expand_orbits(n, &found));
        }
        deficit[n / 3] += 1;
        bases.clear();
    }
    cyclic_search(n, &mut deficit, &mut bases, &class, &weight, &mut 0).map(|found| expand_orbits(n, &found))
}

fn cyclic_search(
    n: usize,
    deficit: &mut Vec<usize>,
    bases: &mut Vec<[usize; 3]>,
    class: &dyn Fn(usize) -> usize,
    weight: &dyn Fn(usize) -> usize,
    nodes: &mut u64,
) -> Option<Vec<[usize; 3]>> {
    *nodes += 1;
    if *nodes > DESIGN_NODE_LIMIT {
        return None;
    }
    let Some(c) = (1..deficit.len()).find(|&c| deficit[c] > 0) else {
        return Some(bases.clone());
    };
    for b in 1..n {
        if b == c {
            continue;
        }
        let block = canonical_orbit(n, [0, c, b]);
        if block[0] == block[1] || bases.contains(&block) || is_short(n, block) {
            continue;
        }
        let hits = [class(c), class(b), class(b + n - c)];
        let mut cost = vec![0usize; deficit.len()];
        for h in hits {
            cost[h] += weight(h);
        }
        if (1..deficit.len()).any(|x| cost[x] > deficit[x]) {
            continue;
        }
        for x in 1..deficit.len() {
            deficit[x] -= cost[x];
        }
        bases.push(block);
        if let Some(found) = cyclic_search(n, deficit, bases, class, weight, nodes) {
            return Some(found);
        }
        bases.pop();
        for x in 1..deficit.len() {
            deficit[x] += cost[x];
        }
    }
    None
}

fn is_short(n: usize, b: [usize; 3]) -> bool {
    n % 3 == 0 && b == [0, n / 3, 2 * n / 3]
}

/// Smallest translate of a block, as a sorted array.
fn canonical_orbit(n: usize, b: [usize; 3]) -> [usize; 3] {
    (0..n)
        .map(|s| {
            let mut t = [(b[0] + s) % n, (b[1] + s) % n, (b[2] + s) % n];
            t.sort_unstable();
            t
        })
        .min()
        .expect("n > 0")
}

fn expand_orbits(n: usize, bases: &[[usize; 3]]) -> Vec<VertexSet> {
    let mut out: Vec<VertexSet> = bases
        .iter()
        .flat_map(|b| {
            (0..n).map(move |s| VertexSet::of(&[((b[0] + s) % n + 1) as u32, ((b[1] + s) % n + 1) as u32, ((b[2] + s) % n + 1) as u32]))
        })
        .collect();
    out.sort_unstable();
    out.dedup();
    out
}

/// A set of pairwise disjoint edges covering `[n]`, found by covering the
/// lowest uncovered vertex first with edges in lexicographic order.
pub fn find_perfect_matching(h: &Hypergraph) -> Result<Option<Vec<VertexSet>>> {
    if h.k() != 3 {
        return Err(Error::UnsupportedUniformity(h.k()));
    }
    if h.n() % 3 != 0 {
        return param(format!("n={} is not divisible by 3", h.n()));
    }
    let by_min: Vec<Vec<VertexSet>> = (1..=h.n() as u32)
        .map(|v| h.edges().iter().copied().filter(|e| e.contains(v)).collect())
        .collect();
    let mut chosen = Vec::with_capacity(h.n() / 3);
    let full = VertexSet::full(h.n());
    Ok(match_rec(&by_min, full, VertexSet::EMPTY, &mut chosen).then_some(chosen))
}

fn match_rec(by_vertex: &[Vec<VertexSet>], full: VertexSet, covered: VertexSet, chosen: &mut Vec<VertexSet>) -> bool {
    let Some(v) = full.difference(covered).min_vertex() else {
        return true;
    };
    for &e in &by_vertex[v as usize - 1] {
        if e.is_disjoint(covered) {
            chosen.push(e);
            if match_rec(by_vertex, full, covered.union(e), chosen) {
                return true;
            }
            chosen.pop();
        }
    }
    false
}

/// Sizes and codegree statistics of a design-plus-matching graph.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConstructionReport {
    pub n: usize,
    pub m: usize,
    pub design_method: DesignMethod,
    pub design_size: usize,
    pub matching_size: usize,
    pub total_size: usize,
    /// `((m-1)/3) C(n,2) + n/3`.
    pub expected_size: usize,
    /// codegree value -> number of pairs of `[n]` with that codegree
    pub codegree_histogram: BTreeMap<usize, usize>,
    pub max_codegree: usize,
    /// Whether the pairs of codegree `m` form `n/3` vertex-disjoint triangles.
    pub triangle_decomposition: bool,
    pub matching: Vec<VertexSet>,
}

/// Builds `Ŝ = S ∪ M`: a simple `(n, 3, m-1)` design `S` plus a perfect
/// matching `M` of its complement.
pub fn build_counterexample(n: usize, m: usize, seed: u64) -> Result<(Hypergraph, ConstructionReport)> {
    if m < 4 {
        return param(format!("m={m} must be at least 4"));
    }
    if n % 3 != 0 {
        return param(format!("n={n} is not divisible by 3"));
    }
    let spec = DesignSpec::new(n, m - 1)?;
    let (design, method) = build_triple_system_with_method(spec, seed)?;
    let complement = design.complement();
    let matching = find_perfect_matching(&complement)?
        .ok_or_else(|| Error::SearchFailure("complement of the design has no perfect matching".into()))?;
    let s_hat = design.union(&Hypergraph::new(n, 3, matching.iter().copied())?)?;
    let histogram = codegree_histogram(&s_hat);
    let report = ConstructionReport {
        n,
        m,
        design_method: method,
        design_size: design.len(),
        matching_size: matching.len(),
        total_size: s_hat.len(),
        expected_size: (m - 1) * n * (n - 1) / 6 + n / 3,
        max_codegree: histogram.keys().copied().max().unwrap_or(0),
        codegree_histogram: histogram,
        triangle_decomposition: codegree_triangles(&s_hat, m),
        matching,
    };
    Ok((s_hat, report))
}

/// Codegree distribution over all pairs of `[n]`, including codegree 0.
pub fn codegree_histogram(h: &Hypergraph) -> BTreeMap<usize, usize> {
    let codeg = h.pair_codegrees();
    let mut out = BTreeMap::new();
    for p in VertexSet::full(h.n()).subsets_of_size(2) {
        *out.entry(codeg.get(&p).copied().unwrap_or(0)).or_insert(0) += 1;
    }
    out
}

/// Whether the graph of pairs with codegree exactly `m` is a disjoint union
/// of `n/3` triangles covering `[n]`.
pub fn codegree_triangles(h: &Hypergraph, m: usize) -> bool {
    let n = h.n();
    if n % 3 != 0 {
        return false;
    }
    let codeg = h.pair_codegrees();
    let mut nbrs = vec![VertexSet::EMPTY; n + 1];
    for (p, &c) in &codeg {
        if c == m {
            let v = p.to_vec();
            nbrs[v[0] as usize].insert(v[1]);
            nbrs[v[1] as usize].insert(v[0]);
        }
    }
    let mut seen = VertexSet::EMPTY;
    let mut triangles = 0;
    for v in 1..=n as u32 {
        if seen.contains(v) {
            continue;
        }
        let nb = nbrs[v as usize];
        if nb.len() != 2 {
            return false;
        }
        let tri = nb.union(VertexSet::singleton(v));
        if tri.iter().any(|u| nbrs[u as usize] != tri.difference(VertexSet::singleton(u))) {
            return false;
        }
        seen = seen.union(tri);
        triangles += 1;
    }
    triangles == n / 3
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum VerifyMode {
    DegreeArgument,
    Exhaustive,
    Both,
}

impl std::str::FromStr for VerifyMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "degree-argument" | "degree" => Ok(VerifyMode::DegreeArgument),
            "exhaustive" => Ok(VerifyMode::Exhaustive),
            "both" => Ok(VerifyMode::Both),
            other => param(format!("unknown mode {other:?}")),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NamedCheck {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SearchRecord {
    pub size: usize,
    pub status: SearchStatus,
    pub witness: Option<FamilyWitness>,
}

/// Overall reading of a verification run.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Conclusion {
    Verified,
    /// The degree checks pass but the exhaustive search ran out of budget;
    /// the claim then rests on the classification of intersecting 3-graphs.
    Conditional,
    Failed,
    Inconclusive,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub n: usize,
    pub m: usize,
    pub edges: usize,
    pub mode: VerifyMode,
    pub checks: Vec<NamedCheck>,
    pub search: Option<SearchRecord>,
    pub conclusion: Conclusion,
}

/// Checks that `s_hat` has no non-trivial intersecting subfamily of size
/// `3m + 1`, by the codegree argument, by exhaustive search, or both.
pub fn verify_counterexample(s_hat: &Hypergraph, m: usize, mode: VerifyMode, budget: &Budget) -> Result<VerificationReport> {
    if s_hat.k() != 3 {
        return param(format!("expected a 3-graph, got k={}", s_hat.k()));
    }
    if m < 1 {
        return param("m must be positive");
    }
    let mut checks = Vec::new();
    if mode != VerifyMode::Exhaustive {
        let delta2 = s_hat.max_codegree2()?;
        checks.push(NamedCheck {
            name: "max-codegree".into(),
            passed: delta2 == m,
            detail: format!("max pair codegree {delta2}, expected {m}"),
        });
        let tri = codegree_triangles(s_hat, m);
        checks.push(NamedCheck {
            name: "codegree-triangles".into(),
            passed: tri,
            detail: format!(
                "pairs of codegree {m} {} {} vertex-disjoint triangles",
                if tri { "form" } else { "do not form" },
                s_hat.n() / 3
            ),
        });
        let e = 3 * m + 1;
        let thresholds: Vec<usize> = [KmTag::H0, KmTag::H2, KmTag::H3]
            .iter()
            .map(|t| t.codegree_bound(e).expect("bounded tag"))
            .collect();
        let min = *thresholds.iter().min().expect("three thresholds");
        checks.push(NamedCheck {
            name: "template-thresholds".into(),
            passed: min > m,
            detail: format!("min{{{}, {}, {}}} = {min} vs m = {m}", thresholds[0], thresholds[1], thresholds[2]),
        });
    }
    let degree_ok = checks.iter().all(|c| c.passed);
    let mut search = None;
    if mode != VerifyMode::DegreeArgument {
        let outcome = find_nontrivial_subfamily(s_hat, 3 * m + 1, 2, budget)?;
        let status = outcome.status();
        search = Some(SearchRecord {
            size: 3 * m + 1,
            status,
            witness: outcome.found(),
        });
    }
    let conclusion = match (mode, search.as_ref().map(|s| s.status)) {
        (_, Some(SearchStatus::Found)) => Conclusion::Failed,
        (VerifyMode::DegreeArgument, _) => {
            if degree_ok {
                Conclusion::Verified
            } else {
                Conclusion::Failed
            }
        }
        (VerifyMode::Exhaustive, Some(SearchStatus::None)) => Conclusion::Verified,
        (VerifyMode::Exhaustive, _) => Conclusion::Inconclusive,
        (VerifyMode::Both, _) if !degree_ok => Conclusion::Failed,
        (VerifyMode::Both, Some(SearchStatus::None)) => Conclusion::Verified,
        (VerifyMode::Both, _) => Conclusion::Conditional,
    };
    Ok(VerificationReport {
        n: s_hat.n(),
        m,
        edges: s_hat.len(),
        mode,
        checks,
        search,
        conclusion,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn assert_design(h: &Hypergraph, lambda: usize) {
        let codeg = h.pair_codegrees();
        for p in VertexSet::full(h.n()).subsets_of_size(2) {
            assert_eq!(codeg.get(&p).copied().unwrap_or(0), lambda, "pair {p}");
        }
    }

    #[test]
    fn stars() {
        assert_eq!(build_star(6, 3).unwrap().len(), 10);
        let s = build_star(5, 3).unwrap();
        assert_eq!(s.len(), 6);
        assert!(s.edges().iter().all(|a| s.edges().iter().all(|b| a.intersects(*b))));
        assert!(build_star(3, 4).is_err());
    }

    #[test]
    fn admissibility() {
        assert!(DesignSpec::new(7, 1).is_ok());
        assert!(DesignSpec::new(9, 3).is_ok());
        assert!(matches!(DesignSpec::new(12, 3), Err(Error::Admissibility(_))));
        assert!(matches!(DesignSpec::new(8, 1), Err(Error::Admissibility(_))));
        assert!(matches!(DesignSpec::new(6, 5), Err(Error::Admissibility(_))));
    }

    #[test]
    fn fano_and_sts9() {
        let fano = build_triple_system(DesignSpec::new(7, 1).unwrap(), 0).unwrap();
        assert_eq!(fano.len(), 7);
        assert_design(&fano, 1);
        let sts9 = build_triple_system(DesignSpec::new(9, 1).unwrap(), 0).unwrap();
        assert_eq!(sts9.len(), 12);
        assert_design(&sts9, 1);
    }

    #[test]
    fn threefold_nine() {
        let (h, method) = build_triple_system_with_method(DesignSpec::new(9, 3).unwrap(), 0).unwrap();
        assert_eq!(h.len(), 36);
        assert_design(&h, 3);
        assert_eq!(method, DesignMethod::DisjointUnion);
    }

    #[test]
    fn other_small_designs() {
        for (n, lambda) in [(6, 2), (13, 1), (10, 2), (15, 1)] {
            let h = build_triple_system(DesignSpec::new(n, lambda).unwrap(), 5).unwrap();
            assert_eq!(h.len(), lambda * n * (n - 1) / 6);
            assert_design(&h, lambda);
        }
    }

    #[test]
    fn seeds_are_reproducible() {
        let spec = DesignSpec::new(9, 3).unwrap();
        assert_eq!(build_triple_system(spec, 42).unwrap(), build_triple_system(spec, 42).unwrap());
    }

    #[test]
    fn matchings() {
        let one = Hypergraph::from_lists(3, 3, &[[1, 2, 3]]).unwrap();
        assert_eq!(find_perfect_matching(&one).unwrap().unwrap(), vec![VertexSet::of(&[1, 2, 3])]);
        let two = Hypergraph::from_lists(6, 3, &[[1, 2, 3], [4, 5, 6]]).unwrap();
        assert_eq!(find_perfect_matching(&two).unwrap().unwrap().len(), 2);
        let none = Hypergraph::from_lists(6, 3, &[[1, 2, 3], [1, 4, 5]]).unwrap();
        assert!(find_perfect_matching(&none).unwrap().is_none());
        assert!(find_perfect_matching(&Hypergraph::complete(7, 3).unwrap()).is_err());
    }

    #[test]
    fn complement_codegree_and_matching() {
        let (n, m) = (9, 4);
        let design = build_triple_system(DesignSpec::new(n, m - 1).unwrap(), 0).unwrap();
        let comp = design.complement();
        assert_design(&comp, n - m - 1);
        let mm = find_perfect_matching(&comp).unwrap().unwrap();
        assert_eq!(mm.len(), 3);
        assert!(mm.iter().all(|e| !design.contains(*e)));
    }

    #[test]
    fn counterexample_nine_four() {
        let (s, report) = build_counterexample(9, 4, 0).unwrap();
        assert_eq!(s.len(), 39);
        assert_eq!(report.expected_size, 39);
        assert_eq!(report.design_size + report.matching_size, report.total_size);
        assert_eq!(s.max_codegree2().unwrap(), 4);
        assert!(report.triangle_decomposition);
        let v = verify_counterexample(&s, 4, VerifyMode::DegreeArgument, &Budget::default()).unwrap();
        assert!(v.checks.iter().all(|c| c.passed), "{:?}", v.checks);
        assert_eq!(v.conclusion, Conclusion::Verified);
    }

    #[test]
    fn counterexample_parameter_errors() {
        assert!(build_counterexample(9, 3, 0).is_err());
        assert!(build_counterexample(10, 4, 0).is_err());
        assert!(matches!(build_counterexample(12, 4, 0), Err(Error::Admissibility(_))));
    }

    #[test]
    fn corruption_is_caught() {
        let (s, report) = build_counterexample(9, 4, 1).unwrap();
        let m_edge = report.matching[0].to_vec();
        let extra = (1..=9u32)
            .filter(|x| !m_edge.contains(x))
            .map(|x| VertexSet::of(&[m_edge[0], m_edge[1], x]))
            .find(|e| !s.contains(*e))
            .unwrap();
        let bad = s.union(&Hypergraph::new(9, 3, [extra]).unwrap()).unwrap();
        let v = verify_counterexample(&bad, 4, VerifyMode::DegreeArgument, &Budget::default()).unwrap();
        assert!(!v.checks[0].passed);
        assert_eq!(v.conclusion, Conclusion::Failed);
    }

    #[test]
    fn threshold_arithmetic() {
        let s = Hypergraph::complete(9, 3).unwrap();
        let v = verify_counterexample(&s, 4, VerifyMode::DegreeArgument, &Budget::default()).unwrap();
        let t = v.checks.iter().find(|c| c.name == "template-thresholds").unwrap();
        assert!(t.passed);
        assert!(t.detail.contains("= 5 vs m = 4"));
    }
}
