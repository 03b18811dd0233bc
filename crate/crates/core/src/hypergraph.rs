//! Uniform hypergraphs on `[n]` and the counting operations on them.

use std::collections::{BTreeSet, HashMap};

use num::{BigInt, BigRational, One, Zero};
use serde::Serialize;

use crate::error::{param, Error, Result};
use crate::vertex_set::{VertexSet, MAX_VERTICES};

/// A `k`-uniform hypergraph on vertex set `[n]`.
///
/// Edges are distinct `k`-subsets of `[n]`, kept in lexicographic order.
/// Values are immutable once built.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Hypergraph {
    n: usize,
    k: usize,
    edges: Vec<VertexSet>,
}

impl Hypergraph {
    /// Builds a hypergraph, rejecting edges of the wrong size, vertices
    /// outside `[n]` and repeated edges.
    pub fn new<I: IntoIterator<Item = VertexSet>>(n: usize, k: usize, edges: I) -> Result<Self> {
        check_dimensions(n, k)?;
        let full = VertexSet::full(n);
        let mut edges: Vec<VertexSet> = edges.into_iter().collect();
        for e in &edges {
            if e.len() != k {
                return param(format!("edge {e} has {} vertices, expected {k}", e.len()));
            }
            if !e.is_subset(full) {
                return param(format!("edge {e} has a vertex outside [{n}]"));
            }
        }
        edges.sort_unstable();
        if let Some(w) = edges.windows(2).find(|w| w[0] == w[1]) {
            return param(format!("duplicate edge {}", w[0]));
        }
        Ok(Hypergraph { n, k, edges })
    }

    /// Convenience constructor from vertex lists.
    pub fn from_lists<L: AsRef<[u32]>>(n: usize, k: usize, lists: &[L]) -> Result<Self> {
        let edges = lists
            .iter()
            .map(|l| VertexSet::from_vertices(l.as_ref().iter().copied()))
            .collect::<Result<Vec<_>>>()?;
        Hypergraph::new(n, k, edges)
    }

    pub fn empty(n: usize, k: usize) -> Result<Self> {
        Hypergraph::new(n, k, std::iter::empty())
    }

    /// The complete `k`-graph `C([n], k)`.
    pub fn complete(n: usize, k: usize) -> Result<Self> {
        check_dimensions(n, k)?;
        let edges = VertexSet::full(n).subsets_of_size(k).collect::<Vec<_>>();
        Ok(Hypergraph { n, k, edges })
    }

    /// Internal constructor for edge lists already known to be valid, sorted
    /// and duplicate-free.
    pub(crate) fn from_sorted_unchecked(n: usize, k: usize, edges: Vec<VertexSet>) -> Self {
        debug_assert!(edges.windows(2).all(|w| w[0] < w[1]));
        debug_assert!(edges.iter().all(|e| e.len() == k));
        Hypergraph { n, k, edges }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn edges(&self) -> &[VertexSet] {
        &self.edges
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn index_of(&self, edge: VertexSet) -> Option<usize> {
        self.edges.binary_search(&edge).ok()
    }

    pub fn contains(&self, edge: VertexSet) -> bool {
        self.index_of(edge).is_some()
    }

    /// Vertices covered by at least one edge.
    pub fn vertex_cover(&self) -> VertexSet {
        self.edges.iter().fold(VertexSet::EMPTY, |acc, e| acc.union(*e))
    }

    pub fn degree(&self, v: u32) -> usize {
        self.edges.iter().filter(|e| e.contains(v)).count()
    }

    /// The subgraph keeping edges for which `keep` returns true.
    pub fn filter(&self, mut keep: impl FnMut(VertexSet) -> bool) -> Hypergraph {
        let edges = self.edges.iter().copied().filter(|&e| keep(e)).collect();
        Hypergraph::from_sorted_unchecked(self.n, self.k, edges)
    }

    /// The subgraph on the given edge indices.
    pub fn subgraph(&self, indices: &[usize]) -> Hypergraph {
        let mut edges: Vec<_> = indices.iter().map(|&i| self.edges[i]).collect();
        edges.sort_unstable();
        edges.dedup();
        Hypergraph::from_sorted_unchecked(self.n, self.k, edges)
    }

    /// `self ∪ other`; both must have the same `n` and `k`.
    pub fn union(&self, other: &Hypergraph) -> Result<Hypergraph> {
        if self.n != other.n || self.k != other.k {
            return param("union of hypergraphs with different n or k");
        }
        let mut edges = self.edges.clone();
        edges.extend_from_slice(&other.edges);
        edges.sort_unstable();
        edges.dedup();
        Ok(Hypergraph::from_sorted_unchecked(self.n, self.k, edges))
    }

    /// `C([n], k)` minus the edges of `self`.
    pub fn complement(&self) -> Hypergraph {
        let edges = VertexSet::full(self.n)
            .subsets_of_size(self.k)
            .filter(|e| !self.contains(*e))
            .collect();
        Hypergraph::from_sorted_unchecked(self.n, self.k, edges)
    }

    /// Applies a permutation of `[n]` given as `map[v - 1]`.
    pub fn relabel(&self, map: &[u32]) -> Result<Hypergraph> {
        Hypergraph::new(self.n, self.k, self.edges.iter().map(|e| e.relabel(map)))
    }

    /// The `i`-th shadow: all `(k - i)`-sets contained in some edge, in
    /// lexicographic order. `shadow(0)` is the edge set itself.
    pub fn shadow(&self, i: usize) -> Result<Vec<VertexSet>> {
        if i >= self.k {
            return param(format!("shadow level {i} outside 0..={}", self.k - 1));
        }
        if i == 0 {
            return Ok(self.edges.clone());
        }
        let mut out = BTreeSet::new();
        for e in &self.edges {
            out.extend(e.subsets_of_size(self.k - i));
        }
        Ok(out.into_iter().collect())
    }

    /// Number of edges containing `s`. The empty set gives `|H|`.
    pub fn codegree(&self, s: VertexSet) -> usize {
        self.edges.iter().filter(|e| s.is_subset(**e)).count()
    }

    /// `Δ₂`: the largest pair codegree of a 3-graph.
    pub fn max_codegree2(&self) -> Result<usize> {
        if self.k != 3 {
            return Err(Error::UnsupportedUniformity(self.k));
        }
        Ok(self.pair_codegrees().values().copied().max().unwrap_or(0))
    }

    /// Codegree of every pair that lies in at least one edge.
    pub fn pair_codegrees(&self) -> HashMap<VertexSet, usize> {
        let mut out = HashMap::new();
        for e in &self.edges {
            for p in e.subsets_of_size(2) {
                *out.entry(p).or_insert(0) += 1;
            }
        }
        out
    }

    /// Degrees of all `(k-1)`-sets in the shadow.
    pub fn shadow_degrees(&self) -> HashMap<VertexSet, usize> {
        let mut out = HashMap::new();
        for e in &self.edges {
            for s in e.subsets_of_size(self.k - 1) {
                *out.entry(s).or_insert(0) += 1;
            }
        }
        out
    }

    /// Weight of an edge: the sum of `1 / deg(E')` over its `(k-1)`-subsets.
    pub fn edge_weight(&self, edge: VertexSet) -> Result<BigRational> {
        if !self.contains(edge) {
            return param(format!("{edge} is not an edge"));
        }
        let mut w = BigRational::zero();
        for s in edge.subsets_of_size(self.k - 1) {
            let deg = self.codegree(s);
            w += BigRational::new(BigInt::one(), BigInt::from(deg));
        }
        Ok(w)
    }

    /// Sum of all edge weights, computed from one pass over the shadow
    /// degrees. Equals `|shadow(1)|`.
    pub fn total_weight(&self) -> BigRational {
        let degs = self.shadow_degrees();
        let mut total = BigRational::zero();
        for e in &self.edges {
            for s in e.subsets_of_size(self.k - 1) {
                total += BigRational::new(BigInt::one(), BigInt::from(degs[&s]));
            }
        }
        total
    }
}

fn check_dimensions(n: usize, k: usize) -> Result<()> {
    if n == 0 || n > MAX_VERTICES {
        return param(format!("n={n} outside 1..={MAX_VERTICES}"));
    }
    if k < 2 || k > n {
        return param(format!("k={k} must satisfy 2 <= k <= n={n}"));
    }
    Ok(())
}

/// Real binomial `x choose j` for `x >= j - 1`.
pub fn real_binomial(x: f64, j: usize) -> f64 {
    (0..j).fold(1.0, |acc, i| acc * (x - i as f64) / (i as f64 + 1.0))
}

/// Solves `C(x, k) = size` for the real `x >= k - 1` (Lovász form of
/// Kruskal–Katona). Returns `k - 1` for `size == 0`.
pub fn kruskal_katona_x(size: u128, k: usize) -> f64 {
    let target = size as f64;
    let mut lo = (k - 1) as f64;
    let mut hi = lo + 1.0;
    while real_binomial(hi, k) < target {
        hi *= 2.0;
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if real_binomial(mid, k) < target {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo < 1e-13 {
            break;
        }
    }
    0.5 * (lo + hi)
}

/// Lower bound `C(x, k-1)` on `|shadow(1)|` implied by `|H| = C(x, k)`.
pub fn kruskal_katona_bound(size: u128, k: usize) -> f64 {
    real_binomial(kruskal_katona_x(size, k), k - 1)
}
