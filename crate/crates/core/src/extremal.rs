//! Exact maximum families avoiding a forbidden configuration, and the
//! near-star stability scan.

use num::{BigInt, BigRational};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::delta::{avd_through, find_avd_system};
use crate::error::{param, Result};
use crate::hypergraph::Hypergraph;
use crate::intersecting::{find_nontrivial_subfamily, nontrivial_through};
use crate::outcome::{Budget, Exhausted, Meter, SearchOutcome};
use crate::vertex_set::{binomial, VertexSet};

/// Largest `C(n, k)` accepted by [`max_avoiding`].
pub const MAX_CANDIDATE_EDGES: usize = 64;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum ForbiddenConfig {
    /// `t` edges forming a non-trivial `d`-wise intersecting family.
    NontrivialIntersecting { t: usize, d: usize },
    /// An `(a, d)`-Δ-system.
    AvdSystem { a: Vec<usize>, d: usize },
    /// A `d`-simplex: `d + 1` edges, non-trivially `d`-wise intersecting.
    Simplex { d: usize },
}

impl ForbiddenConfig {
    fn validate(&self, k: usize) -> Result<()> {
        match self {
            ForbiddenConfig::NontrivialIntersecting { t, d } => {
                if *t < 3 || *d < 2 {
                    return param(format!("need t >= 3 and d >= 2, got t={t} d={d}"));
                }
            }
            ForbiddenConfig::AvdSystem { a, d } => {
                if a.len() < 2 || a.contains(&0) || a.iter().sum::<usize>() != k || *d < a.len() {
                    return param(format!("a={a:?} d={d} is not a valid (a,d) pair for k={k}"));
                }
            }
            ForbiddenConfig::Simplex { d } => {
                if *d < 2 {
                    return param(format!("simplex dimension d={d} must be at least 2"));
                }
            }
        }
        Ok(())
    }

    /// Whether `family ∪ {e}` (with `family` free of the configuration)
    /// still avoids it; any copy would have to use `e`.
    fn admits(&self, family: &[VertexSet], e: VertexSet, meter: &mut Meter<'_>) -> std::result::Result<bool, Exhausted> {
        let mut all = family.to_vec();
        all.push(e);
        all.sort_unstable();
        Ok(match self {
            ForbiddenConfig::NontrivialIntersecting { t, d } => nontrivial_through(&all, *t, *d, e, meter)?.is_none(),
            ForbiddenConfig::Simplex { d } => nontrivial_through(&all, d + 1, *d, e, meter)?.is_none(),
            ForbiddenConfig::AvdSystem { a, d } => avd_through(&all, a, *d, e, meter)?.is_none(),
        })
    }

    /// Full (non-incremental) containment check.
    pub fn is_contained_in(&self, h: &Hypergraph, budget: &Budget) -> Result<SearchOutcome<()>> {
        Ok(match self {
            ForbiddenConfig::NontrivialIntersecting { t, d } => find_nontrivial_subfamily(h, *t, *d, budget)?.map(|_| ()),
            ForbiddenConfig::Simplex { d } => find_nontrivial_subfamily(h, d + 1, *d, budget)?.map(|_| ()),
            ForbiddenConfig::AvdSystem { a, d } => find_avd_system(h, a, *d, budget)?.map(|_| ()),
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExtremalResult {
    pub n: usize,
    pub k: usize,
    pub config: ForbiddenConfig,
    pub max_size: usize,
    /// `C(n-1, k-1)`.
    pub star_size: usize,
    /// Whether the star was checked to avoid the configuration.
    pub star_avoids: bool,
    /// Every maximum family containing the edge `{1..k}`.
    pub families: Vec<Vec<VertexSet>>,
    pub all_extremal_are_stars: bool,
    /// Every reported family passed an independent containment check.
    pub revalidated: bool,
    /// False when the node budget ran out.
    pub exact: bool,
    pub nodes: u64,
}

/// Number of leading edge decisions split into independent parallel tasks.
const SPLIT_DEPTH: usize = 6;

/// Exact maximum size of a `k`-graph on `[n]` avoiding `config`, by
/// branch-and-bound over the edges in lexicographic order.
///
/// The edge `{1..k}` is forced into the family (every nonempty family has a
/// relabelling containing it). When the star avoids the configuration its
/// size seeds the bound. Every family reaching the maximum is kept. The
/// first decisions are split into independent tasks with local bounds, so
/// the result and node count do not depend on scheduling.
pub fn max_avoiding(n: usize, k: usize, config: &ForbiddenConfig, budget: &Budget) -> Result<ExtremalResult> {
    let all = Hypergraph::complete(n, k)?;
    config.validate(k)?;
    if all.len() > MAX_CANDIDATE_EDGES {
        return param(format!(
            "C({n},{k}) = {} candidate edges exceeds the limit {MAX_CANDIDATE_EDGES}",
            all.len()
        ));
    }
    let star_size = binomial(n as u64 - 1, k as u64 - 1) as usize;
    let star = all.filter(|e| e.contains(1));
    let star_check = config.is_contained_in(&star, budget)?;
    let star_avoids = star_check.is_not_found();
    let floor = if star_avoids { star_size } else { 1 };

    let edges = all.edges();
    let depth = SPLIT_DEPTH.min(edges.len() - 1);
    let mut prefixes = Vec::new();
    {
        let mut meter = budget.meter();
        for mask in 0u32..(1 << depth) {
            let mut family = vec![edges[0]];
            let mut ok = true;
            for bit in 0..depth {
                if mask & (1 << bit) != 0 {
                    let e = edges[1 + bit];
                    match config.admits(&family, e, &mut meter) {
                        Ok(true) => family.push(e),
                        Ok(false) => {
                            ok = false;
                            break;
                        }
                        Err(Exhausted) => return Ok(inexact(n, k, config, star_size, star_avoids, meter.total())),
                    }
                }
            }
            if ok {
                prefixes.push(family);
            }
        }
    }
    let parts: Vec<(Option<Leaves>, u64)> = prefixes
        .into_par_iter()
        .map(|family| {
            let mut meter = budget.meter();
            let mut search = BranchAndBound {
                edges,
                config,
                best: floor,
                families: Vec::new(),
            };
            let mut family = family;
            let res = search.dfs(1 + depth, &mut family, &mut meter);
            let nodes = meter.total();
            match res {
                Ok(()) => (Some((search.best, search.families)), nodes),
                Err(Exhausted) => (None, nodes),
            }
        })
        .collect();

    let nodes: u64 = parts.iter().map(|p| p.1).sum();
    if parts.iter().any(|p| p.0.is_none()) {
        return Ok(inexact(n, k, config, star_size, star_avoids, nodes));
    }
    let max_size = parts
        .iter()
        .filter_map(|p| p.0.as_ref())
        .filter(|(_, fams)| !fams.is_empty())
        .map(|(best, _)| *best)
        .max()
        .unwrap_or(floor);
    let mut families: Vec<Vec<VertexSet>> = parts
        .into_iter()
        .filter_map(|p| p.0)
        .filter(|(best, _)| *best == max_size)
        .flat_map(|(_, fams)| fams)
        .collect();
    families.sort();

    let mut revalidated = true;
    for fam in &families {
        let h = Hypergraph::new(n, k, fam.iter().copied())?;
        if !config.is_contained_in(&h, &Budget::default())?.is_not_found() {
            revalidated = false;
        }
    }
    let all_extremal_are_stars = families.iter().all(|f| is_star(f));
    Ok(ExtremalResult {
        n,
        k,
        config: config.clone(),
        max_size,
        star_size,
        star_avoids,
        families,
        all_extremal_are_stars,
        revalidated,
        exact: true,
        nodes,
    })
}

type Leaves = (usize, Vec<Vec<VertexSet>>);

fn inexact(n: usize, k: usize, config: &ForbiddenConfig, star_size: usize, star_avoids: bool, nodes: u64) -> ExtremalResult {
    ExtremalResult {
        n,
        k,
        config: config.clone(),
        max_size: if star_avoids { star_size } else { 1 },
        star_size,
        star_avoids,
        families: Vec::new(),
        all_extremal_are_stars: false,
        revalidated: false,
        exact: false,
        nodes,
    }
}

/// Whether all edges share a vertex.
pub fn is_star(family: &[VertexSet]) -> bool {
    family
        .iter()
        .copied()
        .reduce(VertexSet::intersection)
        .is_some_and(|c| !c.is_empty())
}

struct BranchAndBound<'a> {
    edges: &'a [VertexSet],
    config: &'a ForbiddenConfig,
    best: usize,
    families: Vec<Vec<VertexSet>>,
}

impl BranchAndBound<'_> {
    fn dfs(&mut self, i: usize, family: &mut Vec<VertexSet>, meter: &mut Meter<'_>) -> std::result::Result<(), Exhausted> {
        meter.tick()?;
        if family.len() + (self.edges.len() - i) < self.best {
            return Ok(());
        }
        if i == self.edges.len() {
            if family.len() > self.best {
                self.best = family.len();
                self.families.clear();
            }
            self.families.push(family.clone());
            return Ok(());
        }
        let e = self.edges[i];
        if self.config.admits(family, e, meter)? {
            family.push(e);
            self.dfs(i + 1, family, meter)?;
            family.pop();
        }
        self.dfs(i + 1, family, meter)
    }
}

/// Outcome of [`stability_scan`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StabilityReport {
    /// Vertex of maximum degree (smallest on ties).
    pub vertex: u32,
    pub degree: usize,
    /// Edges not containing `vertex`.
    pub misses: usize,
    /// `δ n^{k-1}` as an exact fraction.
    pub allowance: String,
    pub within_allowance: bool,
}

/// Finds the vertex of maximum degree in a near-extremal `h` and counts the
/// edges missing it.
pub fn stability_scan(h: &Hypergraph, epsilon: &BigRational, delta: &BigRational) -> Result<StabilityReport> {
    let (n, k) = (h.n(), h.k());
    let star = BigRational::from_integer(BigInt::from(binomial(n as u64 - 1, k as u64 - 1)));
    let one = BigRational::from_integer(BigInt::from(1));
    let need = (&one - epsilon) * &star;
    if BigRational::from_integer(BigInt::from(h.len())) < need {
        return param(format!(
            "|H| = {} is below (1 - epsilon) C({},{}) = {}",
            h.len(),
            n - 1,
            k - 1,
            need
        ));
    }
    let (vertex, degree) = (1..=n as u32)
        .map(|v| (v, h.degree(v)))
        .max_by_key(|&(v, d)| (d, std::cmp::Reverse(v)))
        .expect("n >= 1");
    let misses = h.len() - degree;
    let allowance = delta * BigRational::from_integer(BigInt::from(n).pow(k as u32 - 1));
    let within = BigRational::from_integer(BigInt::from(misses)) <= allowance;
    Ok(StabilityReport {
        vertex,
        degree,
        misses,
        allowance: allowance.to_string(),
        within_allowance: within,
    })
}

/// Parses `p/q` or an integer as an exact rational.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let parse_int = |t: &str| {
        t.trim()
            .parse::<BigInt>()
            .map_err(|_| crate::error::Error::Parameter(format!("{s:?} is not a rational number")))
    };
    match s.split_once('/') {
        Some((p, q)) => {
            let q = parse_int(q)?;
            if q == BigInt::from(0) {
                return param(format!("{s:?} has a zero denominator"));
            }
            Ok(BigRational::new(parse_int(p)?, q))
        }
        None => Ok(BigRational::from_integer(parse_int(s)?)),
    }
}
