use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};

use serde::Serialize;

/// Default node budget for the exhaustive searches.
pub const DEFAULT_NODE_BUDGET: u64 = 100_000_000;

/// Result of a validator: either the property holds, or a human-readable
/// reason naming the first violation found.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Holds,
    Fails(String),
}

impl Verdict {
    pub fn holds(&self) -> bool {
        matches!(self, Verdict::Holds)
    }

    pub(crate) fn fail(msg: impl Into<String>) -> Self {
        Verdict::Fails(msg.into())
    }
}

/// Three-way answer of an exact search with a node budget. `NotFound` is a
/// proof of absence; `BudgetExhausted` proves nothing.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SearchOutcome<T> {
    Found(T),
    NotFound,
    BudgetExhausted,
}

impl<T> SearchOutcome<T> {
    pub fn found(self) -> Option<T> {
        match self {
            SearchOutcome::Found(t) => Some(t),
            _ => None,
        }
    }

    pub fn is_found(&self) -> bool {
        matches!(self, SearchOutcome::Found(_))
    }

    pub fn is_not_found(&self) -> bool {
        matches!(self, SearchOutcome::NotFound)
    }

    pub fn is_exhausted(&self) -> bool {
        matches!(self, SearchOutcome::BudgetExhausted)
    }

    pub fn status(&self) -> SearchStatus {
        match self {
            SearchOutcome::Found(_) => SearchStatus::Found,
            SearchOutcome::NotFound => SearchStatus::None,
            SearchOutcome::BudgetExhausted => SearchStatus::BudgetExhausted,
        }
    }

    pub fn map<U>(self, f: impl FnOnce(T) -> U) -> SearchOutcome<U> {
        match self {
            SearchOutcome::Found(t) => SearchOutcome::Found(f(t)),
            SearchOutcome::NotFound => SearchOutcome::NotFound,
            SearchOutcome::BudgetExhausted => SearchOutcome::BudgetExhausted,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SearchStatus {
    Found,
    None,
    BudgetExhausted,
}

/// Node budget shared by all workers of one search.
#[derive(Debug)]
pub struct Budget {
    limit: u64,
    used: AtomicU64,
    exhausted: AtomicBool,
}

const FLUSH_EVERY: u64 = 1024;

impl Budget {
    pub fn new(limit: u64) -> Self {
        Budget {
            limit,
            used: AtomicU64::new(0),
            exhausted: AtomicBool::new(false),
        }
    }

    pub fn unlimited() -> Self {
        Budget::new(u64::MAX)
    }

    pub fn limit(&self) -> u64 {
        self.limit
    }

    /// Nodes charged so far (flushed counts only).
    pub fn used(&self) -> u64 {
        self.used.load(Ordering::Relaxed)
    }

    pub fn is_exhausted(&self) -> bool {
        self.exhausted.load(Ordering::Relaxed)
    }

    pub fn meter(&self) -> Meter<'_> {
        Meter {
            budget: self,
            // small limits need small batches to be enforced at all
            batch: (self.limit / 64).clamp(1, FLUSH_EVERY),
            pending: 0,
            total: 0,
        }
    }

    fn charge(&self, nodes: u64) -> bool {
        if self.exhausted.load(Ordering::Relaxed) {
            return false;
        }
        let prev = self.used.fetch_add(nodes, Ordering::Relaxed);
        if prev.saturating_add(nodes) > self.limit {
            self.exhausted.store(true, Ordering::Relaxed);
            return false;
        }
        true
    }
}

impl Default for Budget {
    fn default() -> Self {
        Budget::new(DEFAULT_NODE_BUDGET)
    }
}

/// Per-worker node counter that charges its [`Budget`] in batches.
pub struct Meter<'a> {
    budget: &'a Budget,
    batch: u64,
    pending: u64,
    total: u64,
}

/// Marker returned when the budget ran out mid-search.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Exhausted;

impl Meter<'_> {
    #[inline]
    pub fn tick(&mut self) -> Result<(), Exhausted> {
        self.pending += 1;
        self.total += 1;
        if self.pending >= self.batch {
            self.flush()
        } else {
            Ok(())
        }
    }

    pub fn flush(&mut self) -> Result<(), Exhausted> {
        let n = std::mem::take(&mut self.pending);
        if self.budget.charge(n) {
            Ok(())
        } else {
            Err(Exhausted)
        }
    }

    /// Nodes visited by this meter.
    pub fn total(&self) -> u64 {
        self.total
    }
}

impl Drop for Meter<'_> {
    fn drop(&mut self) {
        if self.pending > 0 {
            let _ = self.flush();
        }
    }
}
