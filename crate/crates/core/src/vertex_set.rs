//! Sets of vertices of `[n]` stored as a 128-bit mask.
//!
//! Vertices are 1-based: vertex `v` occupies bit `v - 1`. The same type is
//! reused for subsets of part indices `{1..k}` (projections, patterns).

use std::cmp::Ordering;
use std::fmt;

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{param, Result};

/// Largest vertex label a [`VertexSet`] can hold.
pub const MAX_VERTICES: usize = 128;

/// A duplicate-free set of vertices from `{1..128}`.
///
/// Ordering is lexicographic on the ascending vertex lists, so
/// `{1,2,3} < {1,2,4} < {1,3} < {2}` and a set sorts before its extensions.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash)]
pub struct VertexSet(u128);

impl VertexSet {
    pub const EMPTY: VertexSet = VertexSet(0);

    pub const fn from_bits(bits: u128) -> Self {
        VertexSet(bits)
    }

    pub const fn bits(self) -> u128 {
        self.0
    }

    /// `{1..n}`.
    pub fn full(n: usize) -> Self {
        assert!(n <= MAX_VERTICES);
        if n == MAX_VERTICES {
            VertexSet(u128::MAX)
        } else {
            VertexSet((1u128 << n) - 1)
        }
    }

    pub fn singleton(v: u32) -> Self {
        assert!(v >= 1 && v as usize <= MAX_VERTICES, "vertex {v} out of range");
        VertexSet(1u128 << (v - 1))
    }

    /// Builds a set from vertex labels, rejecting repeats and labels outside
    /// `1..=128`.
    pub fn from_vertices<I: IntoIterator<Item = u32>>(vertices: I) -> Result<Self> {
        let mut bits = 0u128;
        for v in vertices {
            if v == 0 || v as usize > MAX_VERTICES {
                return param(format!("vertex {v} outside 1..={MAX_VERTICES}"));
            }
            let b = 1u128 << (v - 1);
            if bits & b != 0 {
                return param(format!("vertex {v} repeated"));
            }
            bits |= b;
        }
        Ok(VertexSet(bits))
    }

    /// Like [`VertexSet::from_vertices`] but panics on bad input. Meant for
    /// literals in tests and examples.
    pub fn of(vertices: &[u32]) -> Self {
        Self::from_vertices(vertices.iter().copied()).expect("valid vertex list")
    }

    #[inline]
    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    #[inline]
    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    #[inline]
    pub fn contains(self, v: u32) -> bool {
        v >= 1 && v as usize <= MAX_VERTICES && self.0 & (1u128 << (v - 1)) != 0
    }

    pub fn insert(&mut self, v: u32) {
        *self = self.union(VertexSet::singleton(v));
    }

    pub fn remove(&mut self, v: u32) {
        *self = self.difference(VertexSet::singleton(v));
    }

    #[inline]
    pub fn intersection(self, other: Self) -> Self {
        VertexSet(self.0 & other.0)
    }

    #[inline]
    pub fn union(self, other: Self) -> Self {
        VertexSet(self.0 | other.0)
    }

    #[inline]
    pub fn difference(self, other: Self) -> Self {
        VertexSet(self.0 & !other.0)
    }

    #[inline]
    pub fn intersects(self, other: Self) -> bool {
        self.0 & other.0 != 0
    }

    #[inline]
    pub fn is_disjoint(self, other: Self) -> bool {
        self.0 & other.0 == 0
    }

    #[inline]
    pub fn is_subset(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn min_vertex(self) -> Option<u32> {
        (self.0 != 0).then(|| self.0.trailing_zeros() + 1)
    }

    pub fn max_vertex(self) -> Option<u32> {
        (self.0 != 0).then(|| 128 - self.0.leading_zeros())
    }

    pub fn iter(self) -> Iter {
        Iter(self.0)
    }

    pub fn to_vec(self) -> Vec<u32> {
        self.iter().collect()
    }

    /// All `r`-element subsets, in lexicographic order.
    pub fn subsets_of_size(self, r: usize) -> Subsets {
        let elems = self.to_vec();
        let done = r > elems.len();
        Subsets {
            elems,
            idx: (0..r).collect(),
            done,
        }
    }

    /// Applies a vertex relabeling `v -> map[v - 1]`.
    pub fn relabel(self, map: &[u32]) -> Self {
        let mut out = VertexSet::EMPTY;
        for v in self.iter() {
            out.insert(map[(v - 1) as usize]);
        }
        out
    }
}

impl Ord for VertexSet {
    fn cmp(&self, other: &Self) -> Ordering {
        let diff = self.0 ^ other.0;
        if diff == 0 {
            return Ordering::Equal;
        }
        // Both lists agree below the smallest differing vertex. The set that
        // owns it is smaller unless the other one has nothing left above it.
        let low = diff & diff.wrapping_neg();
        let above = !((low << 1).wrapping_sub(1));
        if self.0 & low != 0 {
            if other.0 & above != 0 {
                Ordering::Less
            } else {
                Ordering::Greater
            }
        } else if self.0 & above != 0 {
            Ordering::Greater
        } else {
            Ordering::Less
        }
    }
}

impl PartialOrd for VertexSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, v) in self.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{v}")?;
        }
        f.write_str("}")
    }
}

impl FromIterator<u32> for VertexSet {
    /// Collects labels, ignoring repeats. Panics on labels outside `1..=128`.
    fn from_iter<I: IntoIterator<Item = u32>>(iter: I) -> Self {
        let mut s = VertexSet::EMPTY;
        for v in iter {
            s.insert(v);
        }
        s
    }
}

impl Serialize for VertexSet {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_seq(self.iter())
    }
}

impl<'de> Deserialize<'de> for VertexSet {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let v = Vec::<u32>::deserialize(deserializer)?;
        VertexSet::from_vertices(v).map_err(D::Error::custom)
    }
}

/// Ascending iterator over a [`VertexSet`].
#[derive(Clone)]
pub struct Iter(u128);

impl Iterator for Iter {
    type Item = u32;

    #[inline]
    fn next(&mut self) -> Option<u32> {
        if self.0 == 0 {
            return None;
        }
        let v = self.0.trailing_zeros();
        self.0 &= self.0 - 1;
        Some(v + 1)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = self.0.count_ones() as usize;
        (n, Some(n))
    }
}

impl ExactSizeIterator for Iter {}

/// Iterator over fixed-size subsets; see [`VertexSet::subsets_of_size`].
pub struct Subsets {
    elems: Vec<u32>,
    idx: Vec<usize>,
    done: bool,
}

impl Iterator for Subsets {
    type Item = VertexSet;

    fn next(&mut self) -> Option<VertexSet> {
        if self.done {
            return None;
        }
        let out: VertexSet = self.idx.iter().map(|&i| self.elems[i]).collect();
        // advance to the next combination
        let r = self.idx.len();
        let n = self.elems.len();
        let mut i = r;
        loop {
            if i == 0 {
                self.done = true;
                break;
            }
            i -= 1;
            if self.idx[i] < n - r + i {
                self.idx[i] += 1;
                for j in i + 1..r {
                    self.idx[j] = self.idx[j - 1] + 1;
                }
                break;
            }
        }
        Some(out)
    }
}

/// Binomial coefficient as `u128`; saturates on overflow.
pub fn binomial(n: u64, r: u64) -> u128 {
    if r > n {
        return 0;
    }
    let r = r.min(n - r);
    let mut acc: u128 = 1;
    for i in 0..r {
        acc = match acc.checked_mul((n - i) as u128) {
            Some(x) => x / (i as u128 + 1),
            None => return u128::MAX,
        };
    }
    acc
}
