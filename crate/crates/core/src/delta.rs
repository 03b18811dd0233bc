//! Sunflowers and `(a, d)`-Δ-systems.
//!
//! A sunflower (Δ-system) is a family whose pairwise intersections all
//! equal one center. An `(a, b)`-Δ-system is a host edge `E₀` with an
//! `a`-partition `A₁..A_p` and, for each part, `b_i` edges forming a
//! sunflower with `E₀` around the center `E₀ \ A_i`; in the full (non-semi)
//! version every residue `E \ E₀` is pairwise disjoint across all groups.

use rayon::prelude::*;
use serde::ser::SerializeStruct;
use serde::{Deserialize, Serialize, Serializer};

use crate::error::{param, Error, Result};
use crate::hypergraph::Hypergraph;
use crate::outcome::{Budget, Exhausted, Meter, SearchOutcome, Verdict};
use crate::vertex_set::VertexSet;

/// A sunflower: petals whose pairwise intersections all equal `center`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DeltaSystemWitness {
    pub center: VertexSet,
    pub petals: Vec<VertexSet>,
}

/// Outcome of [`is_sunflower`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SunflowerCheck {
    Sunflower(DeltaSystemWitness),
    /// Petals `first` and `second` (indices into the input) meet in
    /// `found` rather than in `expected`, the intersection of the first two.
    Violation {
        first: usize,
        second: usize,
        expected: VertexSet,
        found: VertexSet,
    },
}

impl SunflowerCheck {
    pub fn witness(self) -> Option<DeltaSystemWitness> {
        match self {
            SunflowerCheck::Sunflower(w) => Some(w),
            SunflowerCheck::Violation { .. } => None,
        }
    }
}

pub fn is_sunflower(family: &[VertexSet]) -> Result<SunflowerCheck> {
    if family.len() < 2 {
        return param(format!("a sunflower needs at least 2 sets, got {}", family.len()));
    }
    let center = family[0].intersection(family[1]);
    for i in 0..family.len() {
        for j in i + 1..family.len() {
            let found = family[i].intersection(family[j]);
            if found != center {
                return Ok(SunflowerCheck::Violation {
                    first: i,
                    second: j,
                    expected: center,
                    found,
                });
            }
        }
    }
    Ok(SunflowerCheck::Sunflower(DeltaSystemWitness {
        center,
        petals: family.to_vec(),
    }))
}

/// Finds `s` edges of `h` containing `center` whose residues outside the
/// center are pairwise disjoint. Exact: `None` means no such family exists.
pub fn find_sunflower(h: &Hypergraph, center: VertexSet, s: usize) -> Result<Option<DeltaSystemWitness>> {
    sunflower_search(h.edges(), center, s, None)
}

/// As [`find_sunflower`], but the sunflower must contain the edge `through`.
pub fn find_sunflower_through(
    h: &Hypergraph,
    center: VertexSet,
    s: usize,
    through: VertexSet,
) -> Result<Option<DeltaSystemWitness>> {
    if !h.contains(through) {
        return param(format!("{through} is not an edge"));
    }
    sunflower_search(h.edges(), center, s, Some(through))
}

pub(crate) fn sunflower_search(
    edges: &[VertexSet],
    center: VertexSet,
    s: usize,
    through: Option<VertexSet>,
) -> Result<Option<DeltaSystemWitness>> {
    if s < 2 {
        return param(format!("sunflower size s={s} must be at least 2"));
    }
    let mut used = VertexSet::EMPTY;
    let mut petals = Vec::with_capacity(s);
    if let Some(t) = through {
        if !center.is_subset(t) {
            return Ok(None);
        }
        used = t.difference(center);
        petals.push(t);
    }
    let candidates: Vec<VertexSet> = edges
        .iter()
        .copied()
        .filter(|&e| center.is_subset(e) && Some(e) != through)
        .collect();
    let residues: Vec<VertexSet> = candidates.iter().map(|e| e.difference(center)).collect();
    let mut chosen = Vec::with_capacity(s);
    if pack_disjoint(&residues, 0, used, &mut chosen, s - petals.len()) {
        petals.extend(chosen.iter().map(|&i| candidates[i]));
        petals.sort_unstable();
        Ok(Some(DeltaSystemWitness { center, petals }))
    } else {
        Ok(None)
    }
}

/// Branch-and-bound for `need` pairwise disjoint residues (all of equal
/// size) that also avoid `used`. Picks indices in increasing order, so the
/// first packing found is the lexicographically first.
fn pack_disjoint(residues: &[VertexSet], start: usize, used: VertexSet, chosen: &mut Vec<usize>, need: usize) -> bool {
    if chosen.len() == need {
        return true;
    }
    let compat: Vec<usize> = (start..residues.len()).filter(|&i| residues[i].is_disjoint(used)).collect();
    let missing = need - chosen.len();
    if compat.len() < missing {
        return false;
    }
    let width = residues[compat[0]].len();
    if width == 0 {
        // only the center itself can have an empty residue
        return false;
    }
    let free = compat.iter().fold(VertexSet::EMPTY, |acc, &i| acc.union(residues[i]));
    if free.len() / width < missing {
        return false;
    }
    for (pos, &i) in compat.iter().enumerate() {
        if compat.len() - pos < missing {
            break;
        }
        chosen.push(i);
        if pack_disjoint(residues, i + 1, used.union(residues[i]), chosen, need) {
            return true;
        }
        chosen.pop();
    }
    false
}

/// A candidate `(a, b)`-Δ-system: host, ordered `a`-partition of the host and
/// one group of edges per part.
#[derive(Clone, Debug, PartialEq, Eq, Deserialize)]
pub struct AvdWitness {
    pub host: VertexSet,
    pub parts: Vec<VertexSet>,
    pub groups: Vec<Vec<VertexSet>>,
}

impl AvdWitness {
    pub fn a(&self) -> Vec<usize> {
        self.parts.iter().map(|p| p.len()).collect()
    }

    pub fn b(&self) -> Vec<usize> {
        self.groups.iter().map(Vec::len).collect()
    }

    pub fn d(&self) -> usize {
        self.groups.iter().map(Vec::len).sum()
    }

    /// Host followed by every group edge, in group order.
    pub fn edges(&self) -> Vec<VertexSet> {
        let mut out = vec![self.host];
        for g in &self.groups {
            out.extend_from_slice(g);
        }
        out
    }

    /// Structural checks shared by the validators.
    fn check_shape(&self) -> Result<()> {
        let p = self.parts.len();
        if p < 2 {
            return param(format!("partition has {p} parts, need at least 2"));
        }
        if self.groups.len() != p {
            return param(format!("{} groups for {p} parts", self.groups.len()));
        }
        let mut union = VertexSet::EMPTY;
        for (i, part) in self.parts.iter().enumerate() {
            if part.is_empty() {
                return param(format!("part {} is empty", i + 1));
            }
            if part.intersects(union) {
                return param(format!("part {} overlaps an earlier part", i + 1));
            }
            union = union.union(*part);
        }
        if union != self.host {
            return param(format!("parts cover {union}, host is {}", self.host));
        }
        let k = self.host.len();
        for (i, g) in self.groups.iter().enumerate() {
            if g.is_empty() {
                return param(format!("group {} is empty (b_i must be at least 1)", i + 1));
            }
            if let Some(e) = g.iter().find(|e| e.len() != k) {
                return param(format!("group edge {e} does not have host size {k}"));
            }
        }
        Ok(())
    }
}

impl Serialize for AvdWitness {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = serializer.serialize_struct("AvdWitness", 6)?;
        st.serialize_field("host", &self.host)?;
        st.serialize_field("parts", &self.parts)?;
        st.serialize_field("groups", &self.groups)?;
        st.serialize_field("a", &self.a())?;
        st.serialize_field("b", &self.b())?;
        st.serialize_field("d", &self.d())?;
        st.end()
    }
}

/// Semi condition: for every `i`, `{E₀} ∪ group_i` is a sunflower with
/// center `E₀ \ A_i`. Cross-group residues may overlap.
pub fn is_semi_avb(w: &AvdWitness) -> Result<Verdict> {
    w.check_shape()?;
    for (i, (part, group)) in w.parts.iter().zip(&w.groups).enumerate() {
        let center = w.host.difference(*part);
        let mut family = Vec::with_capacity(group.len() + 1);
        family.push(w.host);
        family.extend_from_slice(group);
        match is_sunflower(&family)? {
            SunflowerCheck::Sunflower(s) if s.center == center => {}
            SunflowerCheck::Sunflower(s) => {
                return Ok(Verdict::fail(format!(
                    "group {} is a sunflower with center {}, expected {center}",
                    i + 1,
                    s.center
                )))
            }
            SunflowerCheck::Violation { first, second, found, .. } => {
                return Ok(Verdict::fail(format!(
                    "group {}: {} and {} meet in {found}, expected {center}",
                    i + 1,
                    family[first],
                    family[second]
                )))
            }
        }
    }
    let mut all = w.edges();
    all.sort_unstable();
    if let Some(pair) = all.windows(2).find(|p| p[0] == p[1]) {
        return Ok(Verdict::fail(format!("edge {} used twice", pair[0])));
    }
    Ok(Verdict::Holds)
}

/// Full `(a, d)` condition: semi, residues pairwise disjoint across all
/// groups, and `Σ b_i = d`.
pub fn is_avd(w: &AvdWitness, d: usize) -> Result<Verdict> {
    let semi = is_semi_avb(w)?;
    if !semi.holds() {
        return Ok(semi);
    }
    let mut seen = VertexSet::EMPTY;
    for e in w.groups.iter().flatten() {
        let r = e.difference(w.host);
        if r.intersects(seen) {
            return Ok(Verdict::fail(format!(
                "residue {r} of {e} meets an earlier residue in {}",
                r.intersection(seen)
            )));
        }
        seen = seen.union(r);
    }
    if w.d() != d {
        return Ok(Verdict::fail(format!("group sizes sum to {}, expected d={d}", w.d())));
    }
    Ok(Verdict::Holds)
}

/// Extracts an `(a, b)`-Δ-system from a semi-`(a, c)`-Δ-system whose group
/// sizes satisfy `c_i >= b_i + Σ_{j<i} a_j b_j`, by a greedy sweep over the
/// groups: each group takes its lexicographically first `b_i` edges whose
/// residues avoid every residue chosen so far.
pub fn complete_semi(w: &AvdWitness, b: &[usize]) -> Result<AvdWitness> {
    let semi = is_semi_avb(w)?;
    if let Verdict::Fails(why) = semi {
        return param(format!("input is not a semi system: {why}"));
    }
    let p = w.parts.len();
    if b.len() != p {
        return param(format!("b has {} entries for {p} parts", b.len()));
    }
    if b.contains(&0) {
        return param("every b_i must be at least 1");
    }
    let a = w.a();
    let c = w.b();
    let mut prefix = 0usize;
    for i in 0..p {
        if c[i] < b[i] + prefix {
            return Err(Error::Precondition(format!(
                "group {} has c={} edges, needs at least b+Σa_j b_j = {}",
                i + 1,
                c[i],
                b[i] + prefix
            )));
        }
        prefix += a[i] * b[i];
    }

    let mut blocked = VertexSet::EMPTY;
    let mut groups = Vec::with_capacity(p);
    for (i, group) in w.groups.iter().enumerate() {
        let mut sorted = group.clone();
        sorted.sort_unstable();
        let picked: Vec<VertexSet> = sorted
            .into_iter()
            .filter(|e| e.difference(w.host).is_disjoint(blocked))
            .take(b[i])
            .collect();
        if picked.len() < b[i] {
            return Err(Error::SearchFailure(format!(
                "group {} left only {} usable edges despite the size condition",
                i + 1,
                picked.len()
            )));
        }
        for e in &picked {
            blocked = blocked.union(e.difference(w.host));
        }
        groups.push(picked);
    }
    Ok(AvdWitness {
        host: w.host,
        parts: w.parts.clone(),
        groups,
    })
}

/// Ordered `a`-partitions of `host`. Parts of equal size are listed once per
/// set partition: among equal sizes, the part with the smaller minimum
/// vertex comes first.
pub fn edge_partitions(host: VertexSet, a: &[usize]) -> Vec<Vec<VertexSet>> {
    let mut out = Vec::new();
    if a.iter().sum::<usize>() != host.len() {
        return out;
    }
    let mut current = Vec::with_capacity(a.len());
    partitions_rec(host, a, &mut current, &mut out);
    out
}

fn partitions_rec(rest: VertexSet, a: &[usize], current: &mut Vec<VertexSet>, out: &mut Vec<Vec<VertexSet>>) {
    let i = current.len();
    if i == a.len() {
        out.push(current.clone());
        return;
    }
    let floor = (0..i)
        .filter(|&j| a[j] == a[i])
        .filter_map(|j| current[j].min_vertex())
        .max()
        .unwrap_or(0);
    for part in rest.subsets_of_size(a[i]) {
        if part.min_vertex().unwrap_or(u32::MAX) <= floor && a[i] > 0 {
            continue;
        }
        current.push(part);
        partitions_rec(rest.difference(part), a, current, out);
        current.pop();
    }
}

fn check_avd_params(k: usize, a: &[usize], d: usize) -> Result<()> {
    let p = a.len();
    if p < 2 {
        return param(format!("a must have at least 2 parts, got {p}"));
    }
    if a.contains(&0) {
        return param("every a_i must be positive");
    }
    if a.iter().sum::<usize>() != k {
        return param(format!("a sums to {}, expected k={k}", a.iter().sum::<usize>()));
    }
    if d < p {
        return param(format!("d={d} must be at least p={p}"));
    }
    Ok(())
}

/// Exact search for an `(a, d)`-Δ-system in `h`.
///
/// Hosts are scanned in lexicographic order (in parallel, reduced in host
/// order), then the canonical `a`-partitions of each host, then a
/// backtracking over groups that picks, for each group in turn, a nonempty
/// set of edges with residues disjoint from everything chosen before.
pub fn find_avd_system(h: &Hypergraph, a: &[usize], d: usize, budget: &Budget) -> Result<SearchOutcome<AvdWitness>> {
    check_avd_params(h.k(), a, d)?;
    let edges = h.edges();
    let hit = edges.par_iter().find_map_first(|&host| {
        let mut meter = budget.meter();
        match search_host(edges, host, a, d, None, &mut meter) {
            Ok(Some(w)) => Some(SearchOutcome::Found(w)),
            Ok(None) => None,
            Err(Exhausted) => Some(SearchOutcome::BudgetExhausted),
        }
    });
    Ok(hit.unwrap_or(SearchOutcome::NotFound))
}

/// Sequential search restricted to systems that use the edge `through`
/// (as host or group member). `edges` must be sorted and contain `through`.
pub(crate) fn avd_through(
    edges: &[VertexSet],
    a: &[usize],
    d: usize,
    through: VertexSet,
    meter: &mut Meter<'_>,
) -> std::result::Result<Option<AvdWitness>, Exhausted> {
    for &host in edges {
        if let Some(w) = search_host(edges, host, a, d, Some(through), meter)? {
            return Ok(Some(w));
        }
    }
    Ok(None)
}

/// Public wrapper of the through-edge search, used by tests and the
/// extremal search.
pub fn find_avd_system_through(
    h: &Hypergraph,
    a: &[usize],
    d: usize,
    through: VertexSet,
    budget: &Budget,
) -> Result<SearchOutcome<AvdWitness>> {
    check_avd_params(h.k(), a, d)?;
    if !h.contains(through) {
        return param(format!("{through} is not an edge"));
    }
    let mut meter = budget.meter();
    Ok(match avd_through(h.edges(), a, d, through, &mut meter) {
        Ok(Some(w)) => SearchOutcome::Found(w),
        Ok(None) => SearchOutcome::NotFound,
        Err(Exhausted) => SearchOutcome::BudgetExhausted,
    })
}

fn search_host(
    edges: &[VertexSet],
    host: VertexSet,
    a: &[usize],
    d: usize,
    through: Option<VertexSet>,
    meter: &mut Meter<'_>,
) -> std::result::Result<Option<AvdWitness>, Exhausted> {
    let p = a.len();
    for parts in edge_partitions(host, a) {
        meter.tick()?;
        let mut forced: Option<(usize, VertexSet)> = None;
        if let Some(t) = through {
            if t != host {
                let meet = t.intersection(host);
                match parts.iter().position(|&part| host.difference(part) == meet) {
                    Some(i) => forced = Some((i, t)),
                    None => continue,
                }
            }
        }
        let cands: Vec<Vec<VertexSet>> = parts
            .iter()
            .enumerate()
            .map(|(i, &part)| {
                let center = host.difference(part);
                edges
                    .iter()
                    .copied()
                    .filter(|&e| e != host && e.intersection(host) == center)
                    .filter(|&e| forced.map_or(true, |(fi, fe)| fi != i || fe != e))
                    .collect()
            })
            .collect();
        if (0..p).any(|i| cands[i].is_empty() && forced.map_or(true, |(fi, _)| fi != i)) {
            continue;
        }
        let mut search = GroupSearch {
            d,
            residues: cands
                .iter()
                .map(|g| g.iter().map(|e| e.difference(host)).collect())
                .collect(),
            picks: vec![Vec::new(); p],
        };
        let mut used = VertexSet::EMPTY;
        let mut total = 0;
        if let Some((fi, fe)) = forced {
            used = fe.difference(host);
            total = 1;
            search.picks[fi].push(usize::MAX);
        }
        if search.run(0, 0, total, used, meter)? {
            let groups = search
                .picks
                .iter()
                .enumerate()
                .map(|(i, picks)| {
                    let mut g: Vec<VertexSet> = picks
                        .iter()
                        .map(|&j| if j == usize::MAX { through.unwrap() } else { cands[i][j] })
                        .collect();
                    g.sort_unstable();
                    g
                })
                .collect();
            return Ok(Some(AvdWitness { host, parts, groups }));
        }
    }
    Ok(None)
}

struct GroupSearch {
    d: usize,
    residues: Vec<Vec<VertexSet>>,
    /// Selected candidate indices per group; `usize::MAX` marks the forced edge.
    picks: Vec<Vec<usize>>,
}

impl GroupSearch {
    fn run(
        &mut self,
        g: usize,
        start: usize,
        total: usize,
        used: VertexSet,
        meter: &mut Meter<'_>,
    ) -> std::result::Result<bool, Exhausted> {
        meter.tick()?;
        let p = self.residues.len();
        if g == p {
            return Ok(total == self.d);
        }
        // Every later group still needs at least one disjoint residue.
        let mut avail_total = 0;
        for j in g..p {
            let from = if j == g { start } else { 0 };
            let avail = self.residues[j][from..].iter().filter(|r| r.is_disjoint(used)).count();
            let has_one = !self.picks[j].is_empty();
            if avail == 0 && !has_one && j > g {
                return Ok(false);
            }
            avail_total += avail;
        }
        if total + avail_total < self.d {
            return Ok(false);
        }
        // later groups still lacking an edge (a forced edge may already sit in one)
        let later = (g + 1..p).filter(|&j| self.picks[j].is_empty()).count();
        let in_group = self.picks[g].len();

        // Close this group first, so smaller group sizes come first.
        if in_group > 0 && total + later <= self.d && self.run(g + 1, 0, total, used, meter)? {
            return Ok(true);
        }
        if total + 1 + later > self.d {
            return Ok(false);
        }
        for j in start..self.residues[g].len() {
            let r = self.residues[g][j];
            if !r.is_disjoint(used) {
                continue;
            }
            self.picks[g].push(j);
            if self.run(g, j + 1, total + 1, used.union(r), meter)? {
                return Ok(true);
            }
            self.picks[g].pop();
        }
        Ok(false)
    }
}
