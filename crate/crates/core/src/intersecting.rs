//! `d`-wise intersecting families, simplices, exact search for non-trivial
//! intersecting subfamilies, and containment of intersecting 3-graphs in the
//! Kostochka–Mubayi templates.

use std::collections::HashMap;
use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{param, Error, Result};
use crate::hypergraph::Hypergraph;
use crate::outcome::{Budget, Exhausted, Meter, SearchOutcome, Verdict};
use crate::vertex_set::VertexSet;

/// A `d`-wise intersecting family together with its common intersection.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyWitness {
    pub edges: Vec<VertexSet>,
    pub d: usize,
    pub common_intersection: VertexSet,
}

impl FamilyWitness {
    pub fn is_nontrivial(&self) -> bool {
        self.common_intersection.is_empty()
    }
}

fn check_wise(family: &[VertexSet], d: usize) -> Result<()> {
    if d < 2 {
        return param(format!("d={d} must be at least 2"));
    }
    if family.is_empty() {
        return param("family is empty");
    }
    Ok(())
}

/// First collection of at most `d` members (as indices) with empty
/// intersection. Intersections of up to `d` members are enumerated as
/// deduplicated masks, one level per extra member.
fn first_empty_tuple(family: &[VertexSet], d: usize) -> Option<Vec<usize>> {
    let mut level: HashMap<VertexSet, Vec<usize>> = HashMap::new();
    let mut order: Vec<VertexSet> = Vec::new();
    for (i, &e) in family.iter().enumerate() {
        if e.is_empty() {
            return Some(vec![i]);
        }
        if !level.contains_key(&e) {
            level.insert(e, vec![i]);
            order.push(e);
        }
    }
    for _ in 1..d.min(family.len()) {
        let mut next_order = order.clone();
        let mut next = level.clone();
        for mask in &order {
            let tuple = &level[mask];
            for (i, &e) in family.iter().enumerate() {
                let meet = mask.intersection(e);
                if meet == *mask || next.contains_key(&meet) {
                    continue;
                }
                let mut t = tuple.clone();
                t.push(i);
                if meet.is_empty() {
                    t.sort_unstable();
                    return Some(t);
                }
                next.insert(meet, t);
                next_order.push(meet);
            }
        }
        if next_order.len() == order.len() {
            break;
        }
        level = next;
        order = next_order;
    }
    None
}

/// Every `min(d, |F|)` members share a vertex.
pub fn is_dwise_intersecting(family: &[VertexSet], d: usize) -> Result<bool> {
    check_wise(family, d)?;
    Ok(first_empty_tuple(family, d).is_none())
}

/// Outcome of [`is_nontrivial`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "result", rename_all = "kebab-case")]
pub enum NontrivialCheck {
    NonTrivial(FamilyWitness),
    /// These members (indices) have empty intersection.
    NotIntersecting { tuple: Vec<usize> },
    /// Every member contains this vertex.
    CommonVertex { vertex: u32 },
}

impl NontrivialCheck {
    pub fn holds(&self) -> bool {
        matches!(self, NontrivialCheck::NonTrivial(_))
    }
}

pub fn is_nontrivial(family: &[VertexSet], d: usize) -> Result<NontrivialCheck> {
    check_wise(family, d)?;
    if let Some(tuple) = first_empty_tuple(family, d) {
        return Ok(NontrivialCheck::NotIntersecting { tuple });
    }
    let common = common_intersection(family);
    if let Some(vertex) = common.min_vertex() {
        return Ok(NontrivialCheck::CommonVertex { vertex });
    }
    Ok(NontrivialCheck::NonTrivial(FamilyWitness {
        edges: family.to_vec(),
        d,
        common_intersection: common,
    }))
}

fn common_intersection(family: &[VertexSet]) -> VertexSet {
    family
        .iter()
        .copied()
        .reduce(VertexSet::intersection)
        .unwrap_or(VertexSet::EMPTY)
}

/// `d + 1` sets, every `d` of which intersect, with empty total
/// intersection. Evaluated by deleting each member in turn.
pub fn is_d_simplex(family: &[VertexSet], d: usize) -> Result<bool> {
    if d == 0 || family.len() != d + 1 {
        return param(format!("a {d}-simplex has {} sets, got {}", d + 1, family.len()));
    }
    if !common_intersection(family).is_empty() {
        return Ok(false);
    }
    Ok((0..family.len()).all(|skip| {
        let rest: Vec<VertexSet> = family
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != skip)
            .map(|(_, &e)| e)
            .collect();
        !common_intersection(&rest).is_empty()
    }))
}

/// Exact search for `t` edges of `h` forming a non-trivial `d`-wise
/// intersecting family. Returns the lexicographically first such family
/// (by edge indices), `NotFound`, or `BudgetExhausted`.
pub fn find_nontrivial_subfamily(
    h: &Hypergraph,
    t: usize,
    d: usize,
    budget: &Budget,
) -> Result<SearchOutcome<FamilyWitness>> {
    check_nontrivial_params(t, d)?;
    let edges = h.edges();
    let hit = (0..edges.len()).into_par_iter().find_map_first(|first| {
        let mut meter = budget.meter();
        let cand: Vec<usize> = (first + 1..edges.len()).collect();
        match NontrivialSearch::new(edges, t, d).start(&[first], cand, &mut meter) {
            Ok(Some(w)) => Some(SearchOutcome::Found(w)),
            Ok(None) => None,
            Err(Exhausted) => Some(SearchOutcome::BudgetExhausted),
        }
    });
    Ok(hit.unwrap_or(SearchOutcome::NotFound))
}

/// As [`find_nontrivial_subfamily`] restricted to families containing `through`.
pub fn find_nontrivial_subfamily_through(
    h: &Hypergraph,
    t: usize,
    d: usize,
    through: VertexSet,
    budget: &Budget,
) -> Result<SearchOutcome<FamilyWitness>> {
    check_nontrivial_params(t, d)?;
    if !h.contains(through) {
        return param(format!("{through} is not an edge"));
    }
    let mut meter = budget.meter();
    Ok(match nontrivial_through(h.edges(), t, d, through, &mut meter) {
        Ok(Some(w)) => SearchOutcome::Found(w),
        Ok(None) => SearchOutcome::NotFound,
        Err(Exhausted) => SearchOutcome::BudgetExhausted,
    })
}

pub(crate) fn nontrivial_through(
    edges: &[VertexSet],
    t: usize,
    d: usize,
    through: VertexSet,
    meter: &mut Meter<'_>,
) -> std::result::Result<Option<FamilyWitness>, Exhausted> {
    let Some(pos) = edges.iter().position(|&e| e == through) else {
        return Ok(None);
    };
    let cand: Vec<usize> = (0..edges.len()).filter(|&i| i != pos).collect();
    NontrivialSearch::new(edges, t, d).start(&[pos], cand, meter)
}

fn check_nontrivial_params(t: usize, d: usize) -> Result<()> {
    if t < 3 {
        return param(format!("family size t={t} must be at least 3"));
    }
    if d < 2 {
        return param(format!("d={d} must be at least 2"));
    }
    Ok(())
}

struct NontrivialSearch<'a> {
    edges: &'a [VertexSet],
    t: usize,
    d: usize,
    chosen: Vec<usize>,
}

impl<'a> NontrivialSearch<'a> {
    fn new(edges: &'a [VertexSet], t: usize, d: usize) -> Self {
        NontrivialSearch {
            edges,
            t,
            d,
            chosen: Vec::with_capacity(t),
        }
    }

    fn start(
        mut self,
        seed: &[usize],
        cand: Vec<usize>,
        meter: &mut Meter<'_>,
    ) -> std::result::Result<Option<FamilyWitness>, Exhausted> {
        // levels[j] holds the intersections of at most j+1 chosen edges
        let mut levels: Vec<Vec<VertexSet>> = vec![Vec::new(); self.d - 1];
        for &i in seed {
            let seed_set: Vec<VertexSet> = self.chosen.iter().map(|&c| self.edges[c]).collect();
            let family: Vec<VertexSet> = seed_set.into_iter().chain([self.edges[i]]).collect();
            if first_empty_tuple(&family, self.d).is_some() {
                return Ok(None);
            }
            levels = extend_levels(&levels, self.edges[i]);
            self.chosen.push(i);
        }
        let common = seed.iter().map(|&i| self.edges[i]).reduce(VertexSet::intersection).unwrap();
        let cand = self.filter(&cand, &levels);
        if self.dfs(cand, &levels, common, meter)? {
            let mut edges: Vec<VertexSet> = self.chosen.iter().map(|&i| self.edges[i]).collect();
            edges.sort_unstable();
            return Ok(Some(FamilyWitness {
                edges,
                d: self.d,
                common_intersection: VertexSet::EMPTY,
            }));
        }
        Ok(None)
    }

    /// Keeps candidates meeting every intersection of at most `d - 1`
    /// chosen edges.
    fn filter(&self, cand: &[usize], levels: &[Vec<VertexSet>]) -> Vec<usize> {
        let top = levels.last().expect("d >= 2");
        cand.iter()
            .copied()
            .filter(|&c| top.iter().all(|m| m.intersects(self.edges[c])))
            .collect()
    }

    fn dfs(
        &mut self,
        cand: Vec<usize>,
        levels: &[Vec<VertexSet>],
        common: VertexSet,
        meter: &mut Meter<'_>,
    ) -> std::result::Result<bool, Exhausted> {
        meter.tick()?;
        if self.chosen.len() == self.t {
            return Ok(common.is_empty());
        }
        let missing = self.t - self.chosen.len();
        if cand.len() < missing {
            return Ok(false);
        }
        // each vertex shared by all chosen edges must be avoided by some candidate
        for v in common.iter() {
            if cand.iter().all(|&c| self.edges[c].contains(v)) {
                return Ok(false);
            }
        }
        if colour_bound(self.edges, &cand) < missing {
            return Ok(false);
        }
        for (pos, &c) in cand.iter().enumerate() {
            if cand.len() - pos < missing {
                break;
            }
            let e = self.edges[c];
            let next_levels = extend_levels(levels, e);
            let next = self.filter(&cand[pos + 1..], &next_levels);
            self.chosen.push(c);
            if self.dfs(next, &next_levels, common.intersection(e), meter)? {
                return Ok(true);
            }
            self.chosen.pop();
        }
        Ok(false)
    }
}

fn extend_levels(levels: &[Vec<VertexSet>], e: VertexSet) -> Vec<Vec<VertexSet>> {
    let mut out = Vec::with_capacity(levels.len());
    for j in 0..levels.len() {
        let mut next = levels[j].clone();
        if j == 0 {
            next.push(e);
        } else {
            next.extend(levels[j - 1].iter().map(|m| m.intersection(e)));
        }
        next.sort_unstable();
        next.dedup();
        out.push(next);
    }
    out
}

/// Greedy partition of the candidates into classes of pairwise disjoint
/// edges. An intersecting family takes at most one edge per class, so the
/// class count bounds how many candidates can still be added.
fn colour_bound(edges: &[VertexSet], cand: &[usize]) -> usize {
    let mut classes: Vec<VertexSet> = Vec::new();
    for &c in cand {
        let e = edges[c];
        match classes.iter_mut().find(|u| u.is_disjoint(e)) {
            Some(u) => *u = u.union(e),
            None => classes.push(e),
        }
    }
    classes.len()
}

/// The Kostochka–Mubayi templates for intersecting 3-graphs.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum KmTag {
    #[serde(rename = "EKR")]
    Ekr,
    H0,
    H1,
    H2,
    H3,
    H4,
    H5,
}

impl KmTag {
    pub const ALL: [KmTag; 7] = [KmTag::Ekr, KmTag::H0, KmTag::H1, KmTag::H2, KmTag::H3, KmTag::H4, KmTag::H5];

    /// Number of labelled core vertices `1..=c`.
    pub fn core_size(self) -> usize {
        match self {
            KmTag::Ekr => 1,
            KmTag::H0 => 3,
            KmTag::H1 => 4,
            KmTag::H2 | KmTag::H3 => 5,
            KmTag::H4 | KmTag::H5 => 6,
        }
    }

    /// Core vertices that the generic rule depends on.
    fn generic_core(self) -> usize {
        match self {
            KmTag::Ekr => 1,
            KmTag::H0 | KmTag::H2 => 3,
            KmTag::H1 => 4,
            KmTag::H3 | KmTag::H4 | KmTag::H5 => 2,
        }
    }

    /// Edges outside the generic rule, over core labels.
    pub fn exceptional(self) -> &'static [[u32; 3]] {
        match self {
            KmTag::Ekr | KmTag::H0 => &[],
            KmTag::H1 => &[[2, 3, 4]],
            KmTag::H2 => &[[2, 3, 4], [2, 3, 5], [1, 4, 5]],
            KmTag::H3 => &[[1, 3, 4], [1, 3, 5], [1, 4, 5], [2, 3, 4], [2, 3, 5], [2, 4, 5]],
            KmTag::H4 => &[[1, 3, 4], [1, 5, 6], [2, 3, 5], [2, 3, 6], [2, 4, 5], [2, 4, 6]],
            KmTag::H5 => &[[1, 3, 4], [1, 5, 6], [1, 3, 6], [2, 3, 5], [2, 3, 6], [2, 4, 6]],
        }
    }

    /// Generic membership rule, given the set of core labels an edge hits.
    fn generic(self, labels: VertexSet) -> bool {
        let has = |v| labels.contains(v);
        match self {
            KmTag::Ekr => has(1),
            KmTag::H0 => labels.intersection(VertexSet::full(3)).len() >= 2,
            KmTag::H1 => has(1) && (has(2) || has(3) || has(4)),
            KmTag::H2 => has(1) && (has(2) || has(3)),
            KmTag::H3 | KmTag::H4 | KmTag::H5 => has(1) && has(2),
        }
    }

    /// Lower bound on `Δ₂` for an `e`-edge subfamily, where one is known.
    pub fn codegree_bound(self, e: usize) -> Option<usize> {
        match self {
            KmTag::H0 => Some(e.div_ceil(3)),
            KmTag::H2 => Some(e.saturating_sub(3).div_ceil(2)),
            KmTag::H3 | KmTag::H4 | KmTag::H5 => Some(e.saturating_sub(6)),
            KmTag::Ekr | KmTag::H1 => None,
        }
    }
}

impl fmt::Display for KmTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            KmTag::Ekr => "EKR",
            KmTag::H0 => "H0",
            KmTag::H1 => "H1",
            KmTag::H2 => "H2",
            KmTag::H3 => "H3",
            KmTag::H4 => "H4",
            KmTag::H5 => "H5",
        };
        f.write_str(s)
    }
}

impl std::str::FromStr for KmTag {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        KmTag::ALL
            .into_iter()
            .find(|t| t.to_string().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::Parameter(format!("unknown template tag {s:?}")))
    }
}

/// A template together with the images of its core vertices:
/// core vertex `i` maps to `map[i - 1]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KmFamily {
    pub tag: KmTag,
    pub map: Vec<u32>,
}

impl KmFamily {
    /// Whether the relabelled template contains `edge`.
    pub fn contains(&self, edge: VertexSet) -> bool {
        let mut labels = VertexSet::EMPTY;
        for v in edge.iter() {
            if let Some(i) = self.map.iter().position(|&m| m == v) {
                labels.insert(i as u32 + 1);
            }
        }
        if self.tag.generic(labels) {
            return true;
        }
        labels.len() == 3 && self.tag.exceptional().iter().any(|x| VertexSet::of(x) == labels)
    }

    /// The relabelled template on `[n]`.
    pub fn template(&self, n: usize) -> Result<Hypergraph> {
        let edges = VertexSet::full(n).subsets_of_size(3).filter(|&e| self.contains(e));
        Hypergraph::new(n, 3, edges)
    }
}

/// The template `tag` on `[n]` with core vertices `1..=c` fixed.
pub fn km_template(tag: KmTag, n: usize) -> Result<Hypergraph> {
    if n < tag.core_size().max(3) {
        return param(format!("{tag} needs n >= {}", tag.core_size().max(3)));
    }
    KmFamily {
        tag,
        map: (1..=tag.core_size() as u32).collect(),
    }
    .template(n)
}

/// Finds a template (tried in the order EKR, H0..H5) and an injective map of
/// its core vertices into `[n]` under which the template contains `f`.
pub fn classify_intersecting(f: &Hypergraph) -> Result<KmFamily> {
    if f.k() != 3 {
        return Err(Error::UnsupportedUniformity(f.k()));
    }
    if f.len() < 11 {
        return param(format!("classification needs at least 11 edges, got {}", f.len()));
    }
    if !is_dwise_intersecting(f.edges(), 2)? {
        return param("family is not intersecting");
    }
    for tag in KmTag::ALL {
        if let Some(map) = match_template(f, tag) {
            return Ok(KmFamily { tag, map });
        }
    }
    let dump: Vec<String> = f.edges().iter().map(|e| e.to_string()).collect();
    Err(Error::Unclassified(format!("n={} edges=[{}]", f.n(), dump.join(" "))))
}

fn match_template(f: &Hypergraph, tag: KmTag) -> Option<Vec<u32>> {
    let c = tag.core_size();
    if f.n() < c {
        return None;
    }
    let cover = f.vertex_cover();
    // vertices by decreasing degree, then one representative per batch of
    // unused vertices (unused vertices are interchangeable)
    let mut pool: Vec<u32> = cover.iter().collect();
    pool.sort_by_key(|&v| (std::cmp::Reverse(f.degree(v)), v));
    let spares: Vec<u32> = VertexSet::full(f.n()).difference(cover).iter().take(c).collect();
    let mut map = Vec::with_capacity(c);
    let mut matcher = Matcher { f, tag, pool, spares };
    matcher.assign(&mut map).then_some(map)
}

struct Matcher<'a> {
    f: &'a Hypergraph,
    tag: KmTag,
    pool: Vec<u32>,
    spares: Vec<u32>,
}

impl Matcher<'_> {
    fn assign(&mut self, map: &mut Vec<u32>) -> bool {
        let i = map.len();
        if i == self.tag.core_size() {
            let fam = KmFamily {
                tag: self.tag,
                map: map.clone(),
            };
            return self.f.edges().iter().all(|&e| fam.contains(e));
        }
        if i >= self.tag.generic_core() || i == 1 {
            if !self.partial_ok(map) {
                return false;
            }
        }
        let used_spares = map.iter().filter(|v| self.spares.contains(v)).count();
        let next_spare = self.spares.get(used_spares).copied();
        let options: Vec<u32> = self
            .pool
            .iter()
            .copied()
            .chain(next_spare)
            .filter(|v| !map.contains(v))
            .collect();
        for v in options {
            map.push(v);
            if self.assign(map) {
                return true;
            }
            map.pop();
        }
        false
    }

    /// Necessary conditions on a partial map: once the generic core is
    /// placed, at most `|exceptional|` edges may fall outside the generic
    /// rule; for the rules requiring core vertex 1, that bound already
    /// applies to the edges missing its image.
    fn partial_ok(&self, map: &[u32]) -> bool {
        let budget = self.tag.exceptional().len();
        if map.len() >= self.tag.generic_core() {
            let fam = KmFamily {
                tag: self.tag,
                map: map[..self.tag.generic_core()].to_vec(),
            };
            let outside = self
                .f
                .edges()
                .iter()
                .filter(|&&e| {
                    let mut labels = VertexSet::EMPTY;
                    for v in e.iter() {
                        if let Some(i) = fam.map.iter().position(|&m| m == v) {
                            labels.insert(i as u32 + 1);
                        }
                    }
                    !self.tag.generic(labels)
                })
                .count();
            return outside <= budget;
        }
        if self.tag != KmTag::H0 {
            let missing = self.f.edges().iter().filter(|e| !e.contains(map[0])).count();
            return missing <= budget;
        }
        true
    }
}

/// Checks the codegree lower bound attached to `family.tag` for `f`,
/// after confirming that the relabelled template contains `f`.
pub fn check_km_codegree_bounds(f: &Hypergraph, family: &KmFamily) -> Result<Verdict> {
    let Some(bound) = family.tag.codegree_bound(f.len()) else {
        return param(format!("no codegree bound is attached to {}", family.tag));
    };
    if let Some(e) = f.edges().iter().find(|&&e| !family.contains(e)) {
        return param(format!("{e} is not in the relabelled {}", family.tag));
    }
    let delta2 = f.max_codegree2()?;
    if delta2 >= bound {
        Ok(Verdict::Holds)
    } else {
        Ok(Verdict::fail(format!(
            "max codegree {delta2} is below the bound {bound} for {} edges in {}",
            f.len(),
            family.tag
        )))
    }
}
