//! Intersection structures, projections onto a `k`-partition of `[n]`,
//! intersection patterns and `s`-homogeneous subgraphs.

use std::collections::{BTreeMap, BTreeSet};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::delta::sunflower_search;
use crate::error::{param, Result};
use crate::hypergraph::Hypergraph;
use crate::vertex_set::VertexSet;

/// `{E ∩ E' : E' ∈ H, E' ≠ E}` in lexicographic order.
pub fn intersection_structure(h: &Hypergraph, edge: VertexSet) -> Result<Vec<VertexSet>> {
    if !h.contains(edge) {
        return param(format!("{edge} is not an edge"));
    }
    Ok(structure_of(h.edges(), edge).into_iter().collect())
}

fn structure_of(edges: &[VertexSet], edge: VertexSet) -> BTreeSet<VertexSet> {
    edges
        .iter()
        .filter(|&&f| f != edge)
        .map(|&f| f.intersection(edge))
        .collect()
}

/// A partition of `[n]` into `k` labelled parts `V_1..V_k`; parts may be empty.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VertexPartition {
    n: usize,
    parts: Vec<VertexSet>,
}

impl VertexPartition {
    pub fn new(n: usize, parts: Vec<VertexSet>) -> Result<Self> {
        let mut seen = VertexSet::EMPTY;
        for (i, p) in parts.iter().enumerate() {
            if p.intersects(seen) {
                return param(format!("part {} overlaps an earlier part", i + 1));
            }
            seen = seen.union(*p);
        }
        if seen != VertexSet::full(n) {
            return param(format!("parts cover {seen}, not [{n}]"));
        }
        if parts.is_empty() {
            return param("a partition needs at least one part");
        }
        Ok(VertexPartition { n, parts })
    }

    /// Partition from a colouring `color[v - 1] ∈ 0..k`.
    pub fn from_coloring(k: usize, color: &[usize]) -> Result<Self> {
        let mut parts = vec![VertexSet::EMPTY; k];
        for (i, &c) in color.iter().enumerate() {
            if c >= k {
                return param(format!("colour {c} outside 0..{k}"));
            }
            parts[c].insert(i as u32 + 1);
        }
        VertexPartition::new(color.len(), parts)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.parts.len()
    }

    pub fn parts(&self) -> &[VertexSet] {
        &self.parts
    }

    /// `Π(S)`: indices (1-based) of the parts that `S` meets.
    pub fn project(&self, s: VertexSet) -> Result<VertexSet> {
        if !s.is_subset(VertexSet::full(self.n)) {
            return param(format!("{s} is not a subset of [{}]", self.n));
        }
        Ok(self.project_unchecked(s))
    }

    fn project_unchecked(&self, s: VertexSet) -> VertexSet {
        let mut out = VertexSet::EMPTY;
        for (i, p) in self.parts.iter().enumerate() {
            if p.intersects(s) {
                out.insert(i as u32 + 1);
            }
        }
        out
    }

    /// Whether `e` has exactly one vertex in every part.
    pub fn is_transversal(&self, e: VertexSet) -> bool {
        e.len() == self.parts.len() && self.parts.iter().all(|p| p.intersection(e).len() == 1)
    }
}

/// A family of proper subsets of `[k]`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct IntersectionPattern {
    k: usize,
    sets: BTreeSet<VertexSet>,
}

impl IntersectionPattern {
    pub fn new<I: IntoIterator<Item = VertexSet>>(k: usize, sets: I) -> Result<Self> {
        let full = VertexSet::full(k);
        let sets: BTreeSet<VertexSet> = sets.into_iter().collect();
        for s in &sets {
            if !s.is_subset(full) {
                return param(format!("{s} is not a subset of [{k}]"));
            }
            if *s == full {
                return param(format!("pattern may not contain [{k}] itself"));
            }
        }
        Ok(IntersectionPattern { k, sets })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn sets(&self) -> &BTreeSet<VertexSet> {
        &self.sets
    }

    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }

    pub fn contains(&self, s: VertexSet) -> bool {
        self.sets.contains(&s)
    }

    /// First pair `(A, B)` with `A ∩ B` outside the pattern, if any.
    pub fn closure_violation(&self) -> Option<(VertexSet, VertexSet)> {
        let v: Vec<VertexSet> = self.sets.iter().copied().collect();
        for (i, &a) in v.iter().enumerate() {
            for &b in &v[i + 1..] {
                if !self.sets.contains(&a.intersection(b)) {
                    return Some((a, b));
                }
            }
        }
        None
    }

    pub fn is_closed_under_intersection(&self) -> bool {
        self.closure_violation().is_none()
    }

    /// Smallest `|A|` over `A ⊆ [k]` contained in no member of the pattern.
    /// The empty pattern has rank 0; `[k]` always qualifies, so the result
    /// lies in `0..=k`.
    pub fn rank(&self) -> usize {
        let full = VertexSet::full(self.k);
        for size in 0..=self.k {
            if full
                .subsets_of_size(size)
                .any(|a| !self.sets.iter().any(|b| a.is_subset(*b)))
            {
                return size;
            }
        }
        self.k
    }
}

/// Sunflower of size `s` through one edge, by indices into the subgraph.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CenterWitness {
    pub edge: usize,
    pub center: VertexSet,
    pub petals: Vec<usize>,
}

/// Certificate that a hypergraph is `s`-homogeneous with respect to a
/// partition.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HomogeneousCertificate {
    pub subgraph: Hypergraph,
    pub partition: VertexPartition,
    pub pattern: IntersectionPattern,
    pub s: usize,
    pub witnesses: Vec<CenterWitness>,
}

impl HomogeneousCertificate {
    pub fn rank(&self) -> usize {
        self.pattern.rank()
    }

    /// `|H*| <= |∂_{k-r} H*|`, where `∂_k` of a nonempty graph is `{∅}`.
    pub fn rank_shadow_bound_holds(&self) -> bool {
        let k = self.subgraph.k();
        let level = k - self.rank();
        let shadow = if level == k {
            usize::from(!self.subgraph.is_empty())
        } else {
            self.subgraph.shadow(level).map(|s| s.len()).unwrap_or(0)
        };
        self.subgraph.len() <= shadow
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "condition", rename_all = "kebab-case")]
pub enum HomogeneityFailure {
    /// Condition (1): an edge does not meet every part exactly once.
    NotKPartite { edge: VertexSet },
    /// Condition (2): projected structure of `edge` differs from the first edge's.
    PatternMismatch {
        edge: VertexSet,
        expected: Vec<VertexSet>,
        found: Vec<VertexSet>,
    },
    /// Condition (3): `a ∩ b` is not in the pattern.
    NotClosed { a: VertexSet, b: VertexSet },
    /// Condition (4): no `s`-sunflower through `edge` has center `center`.
    MissingSunflower { edge: VertexSet, center: VertexSet },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum HomogeneityCheck {
    Homogeneous(HomogeneousCertificate),
    Fails(HomogeneityFailure),
}

impl HomogeneityCheck {
    pub fn certificate(self) -> Option<HomogeneousCertificate> {
        match self {
            HomogeneityCheck::Homogeneous(c) => Some(c),
            HomogeneityCheck::Fails(_) => None,
        }
    }
}

/// Checks the four homogeneity conditions in order and reports the first
/// violation.
pub fn is_homogeneous(h: &Hypergraph, s: usize, partition: &VertexPartition) -> Result<HomogeneityCheck> {
    if s < 2 {
        return param(format!("s={s} must be at least 2"));
    }
    if partition.n() != h.n() || partition.k() != h.k() {
        return param(format!(
            "partition has {} parts of [{}], hypergraph needs {} parts of [{}]",
            partition.k(),
            partition.n(),
            h.k(),
            h.n()
        ));
    }
    let edges = h.edges();
    if let Some(&edge) = edges.iter().find(|&&e| !partition.is_transversal(e)) {
        return Ok(HomogeneityCheck::Fails(HomogeneityFailure::NotKPartite { edge }));
    }
    let mut pattern_sets = BTreeSet::new();
    if let Some(&first) = edges.first() {
        pattern_sets = projected_structure(edges, first, partition);
        for &e in &edges[1..] {
            let found = projected_structure(edges, e, partition);
            if found != pattern_sets {
                return Ok(HomogeneityCheck::Fails(HomogeneityFailure::PatternMismatch {
                    edge: e,
                    expected: pattern_sets.into_iter().collect(),
                    found: found.into_iter().collect(),
                }));
            }
        }
    }
    let pattern = IntersectionPattern::new(h.k(), pattern_sets)?;
    if let Some((a, b)) = pattern.closure_violation() {
        return Ok(HomogeneityCheck::Fails(HomogeneityFailure::NotClosed { a, b }));
    }
    let mut witnesses = Vec::new();
    for (idx, &e) in edges.iter().enumerate() {
        for center in structure_of(edges, e) {
            match sunflower_search(edges, center, s, Some(e))? {
                Some(w) => witnesses.push(CenterWitness {
                    edge: idx,
                    center,
                    petals: w.petals.iter().map(|p| h.index_of(*p).expect("petal is an edge")).collect(),
                }),
                None => {
                    return Ok(HomogeneityCheck::Fails(HomogeneityFailure::MissingSunflower {
                        edge: e,
                        center,
                    }))
                }
            }
        }
    }
    Ok(HomogeneityCheck::Homogeneous(HomogeneousCertificate {
        subgraph: h.clone(),
        partition: partition.clone(),
        pattern,
        s,
        witnesses,
    }))
}

fn projected_structure(edges: &[VertexSet], e: VertexSet, partition: &VertexPartition) -> BTreeSet<VertexSet> {
    edges
        .iter()
        .filter(|&&f| f != e)
        .map(|&f| partition.project_unchecked(f.intersection(e)))
        .collect()
}

/// Number of random restarts used by [`extract_homogeneous`].
pub const DEFAULT_RESTARTS: usize = 8;

/// Finds an `s`-homogeneous subgraph of a nonempty `h`.
///
/// Each restart colours `[n]` with `k` colours by seeded local search
/// maximising the number of rainbow edges, then repeatedly keeps the largest
/// class of edges sharing a projected structure (ties: smallest pattern),
/// breaks closure violations and drops edges lacking a required sunflower,
/// until the remainder is homogeneous. The largest result wins; ties go to
/// the lowest restart index, so the output depends only on `seed`.
pub fn extract_homogeneous(h: &Hypergraph, s: usize, seed: u64, restarts: usize) -> Result<HomogeneousCertificate> {
    if s < 2 {
        return param(format!("s={s} must be at least 2"));
    }
    if h.is_empty() {
        return param("cannot extract from an empty hypergraph");
    }
    let restarts = restarts.max(1);
    let results: Vec<Result<HomogeneousCertificate>> = (0..restarts)
        .into_par_iter()
        .map(|r| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed ^ (r as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15));
            extract_once(h, s, &mut rng)
        })
        .collect();
    let mut best: Option<HomogeneousCertificate> = None;
    for r in results {
        let c = r?;
        if best.as_ref().map_or(true, |b| c.subgraph.len() > b.subgraph.len()) {
            best = Some(c);
        }
    }
    Ok(best.expect("at least one restart"))
}

fn extract_once(h: &Hypergraph, s: usize, rng: &mut ChaCha8Rng) -> Result<HomogeneousCertificate> {
    let partition = rainbow_partition(h, rng)?;
    let mut current: Vec<VertexSet> = h.edges().iter().copied().filter(|&e| partition.is_transversal(e)).collect();
    loop {
        if current.is_empty() {
            return single_edge_certificate(h, s);
        }
        // dropping edges changes the patterns of the survivors, so regroup until stable
        let class = largest_pattern_class(&current, &partition);
        if class.len() < current.len() {
            current = class;
            continue;
        }
        let pattern = projected_structure(&current, current[0], &partition);
        let pattern = IntersectionPattern::new(h.k(), pattern)?;
        if let Some((a, b)) = pattern.closure_violation() {
            current = break_closure(&current, &partition, a, b);
            continue;
        }
        let missing: BTreeSet<VertexSet> = current
            .iter()
            .copied()
            .filter(|&e| {
                structure_of(&current, e)
                    .into_iter()
                    .any(|c| matches!(sunflower_search(&current, c, s, Some(e)), Ok(None)))
            })
            .collect();
        if missing.is_empty() {
            let sub = Hypergraph::new(h.n(), h.k(), current.iter().copied())?;
            match is_homogeneous(&sub, s, &partition)? {
                HomogeneityCheck::Homogeneous(c) => return Ok(c),
                HomogeneityCheck::Fails(f) => {
                    return Err(crate::error::Error::SearchFailure(format!(
                        "extraction reached a non-homogeneous fixed point: {f:?}"
                    )))
                }
            }
        }
        current.retain(|e| !missing.contains(e));
    }
}

/// Local search over colourings: each sweep moves every vertex to the
/// colour that maximises rainbow edges, until no move helps.
fn rainbow_partition(h: &Hypergraph, rng: &mut ChaCha8Rng) -> Result<VertexPartition> {
    let (n, k) = (h.n(), h.k());
    let mut color: Vec<usize> = (0..n).map(|_| rng.gen_range(0..k)).collect();
    // seed the colouring so that one random edge is rainbow
    let e = h.edges()[rng.gen_range(0..h.len())];
    let mut palette: Vec<usize> = (0..k).collect();
    palette.shuffle(rng);
    for (v, c) in e.iter().zip(palette) {
        color[v as usize - 1] = c;
    }
    let incident: Vec<Vec<VertexSet>> = (1..=n as u32)
        .map(|v| h.edges().iter().copied().filter(|e| e.contains(v)).collect())
        .collect();
    let rainbow = |color: &[usize], e: VertexSet| {
        let mut seen = 0u128;
        for v in e.iter() {
            seen |= 1 << color[v as usize - 1];
        }
        seen.count_ones() as usize == k
    };
    let mut order: Vec<usize> = (0..n).collect();
    for _ in 0..64 {
        order.shuffle(rng);
        let mut improved = false;
        for &v in &order {
            let current = color[v];
            let score = |color: &mut Vec<usize>, c: usize| {
                color[v] = c;
                incident[v].iter().filter(|&&e| rainbow(color, e)).count()
            };
            let base = score(&mut color, current);
            let mut best = (base, current);
            for c in 0..k {
                if c != current {
                    let sc = score(&mut color, c);
                    if sc > best.0 {
                        best = (sc, c);
                    }
                }
            }
            color[v] = best.1;
            improved |= best.1 != current;
        }
        if !improved {
            break;
        }
    }
    VertexPartition::from_coloring(k, &color)
}

fn largest_pattern_class(edges: &[VertexSet], partition: &VertexPartition) -> Vec<VertexSet> {
    let mut classes: BTreeMap<Vec<VertexSet>, Vec<VertexSet>> = BTreeMap::new();
    for &e in edges {
        let key: Vec<VertexSet> = projected_structure(edges, e, partition).into_iter().collect();
        classes.entry(key).or_default().push(e);
    }
    // BTreeMap iterates patterns in ascending order; keep the first maximum
    let mut best: Option<Vec<VertexSet>> = None;
    for (_, class) in classes {
        if best.as_ref().map_or(true, |b| class.len() > b.len()) {
            best = Some(class);
        }
    }
    best.unwrap_or_default()
}

/// Removes, relative to the first edge, every edge whose projected
/// intersection with it is `a` or every one giving `b`, whichever is fewer.
/// This drops `a` or `b` from the first edge's pattern, so the edge count
/// strictly decreases.
fn break_closure(edges: &[VertexSet], partition: &VertexPartition, a: VertexSet, b: VertexSet) -> Vec<VertexSet> {
    let first = edges[0];
    let proj = |f: VertexSet| partition.project_unchecked(f.intersection(first));
    let hits_a = edges.iter().filter(|&&f| f != first && proj(f) == a).count();
    let hits_b = edges.iter().filter(|&&f| f != first && proj(f) == b).count();
    let target = if hits_a <= hits_b { a } else { b };
    edges.iter().copied().filter(|&f| f == first || proj(f) != target).collect()
}

/// Fallback: the first edge alone, with a partition that makes it rainbow.
fn single_edge_certificate(h: &Hypergraph, s: usize) -> Result<HomogeneousCertificate> {
    let e = h.edges()[0];
    let verts = e.to_vec();
    let mut parts = vec![VertexSet::EMPTY; h.k()];
    for (i, &v) in verts.iter().enumerate().skip(1) {
        parts[i] = VertexSet::singleton(v);
    }
    parts[0] = VertexSet::full(h.n()).difference(e).union(VertexSet::singleton(verts[0]));
    let partition = VertexPartition::new(h.n(), parts)?;
    let sub = Hypergraph::new(h.n(), h.k(), [e])?;
    Ok(is_homogeneous(&sub, s, &partition)?
        .certificate()
        .expect("a single edge is homogeneous"))
}
