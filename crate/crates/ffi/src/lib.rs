//! C ABI over `hyperdelta`.
//!
//! Hypergraphs cross the boundary as opaque [`HdHypergraph`] handles. Every
//! fallible call returns an [`HdStatus`]; on failure the message is
//! available from [`hd_last_error`] on the same thread. Strings returned
//! through `char **` out-parameters are owned by the caller and must be
//! released with [`hd_string_free`]. Structured results (witnesses,
//! verification reports) are JSON.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use hyperdelta::constructions::{verify_counterexample, Conclusion, VerifyMode};
use hyperdelta::{
    build_counterexample, build_star, build_triple_system, find_avd_system, find_nontrivial_subfamily,
    find_sunflower, parse_hypergraph, serialize_hypergraph, Budget, DesignSpec, Error, Hypergraph, SearchOutcome,
    VertexSet,
};

/// Result code of every fallible call.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HdStatus {
    Ok = 0,
    /// The search finished without a witness, or a verification was refuted.
    NotFound = 1,
    /// The node budget ran out before the search finished.
    BudgetExhausted = 2,
    InvalidInput = 3,
    NullPointer = 4,
    Internal = 5,
}

/// Verification strategy for [`hd_verify_counterexample`].
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HdVerifyMode {
    DegreeArgument = 0,
    Exhaustive = 1,
    Both = 2,
}

/// Opaque uniform hypergraph.
pub struct HdHypergraph(Hypergraph);

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: impl Into<String>) {
    let msg = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(msg).unwrap_or_default());
}

struct Failure(HdStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let status = match e {
            Error::SearchFailure(_) | Error::Io(_) => HdStatus::Internal,
            _ => HdStatus::InvalidInput,
        };
        Failure(status, e.to_string())
    }
}

fn null(what: &str) -> Failure {
    Failure(HdStatus::NullPointer, format!("{what} is null"))
}

fn invalid(msg: impl Into<String>) -> Failure {
    Failure(HdStatus::InvalidInput, msg.into())
}

/// Runs `f`, records any failure or panic, and returns its status.
fn guard(f: impl FnOnce() -> Result<HdStatus, Failure>) -> HdStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(status)) => {
            if status == HdStatus::Ok {
                set_error("");
            }
            status
        }
        Ok(Err(Failure(status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic");
            HdStatus::Internal
        }
    }
}

unsafe fn graph<'a>(h: *const HdHypergraph) -> Result<&'a Hypergraph, Failure> {
    h.as_ref().map(|h| &h.0).ok_or_else(|| null("hypergraph"))
}

unsafe fn slice<'a, T>(p: *const T, len: usize, what: &str) -> Result<&'a [T], Failure> {
    if len == 0 {
        Ok(&[])
    } else if p.is_null() {
        Err(null(what))
    } else {
        Ok(std::slice::from_raw_parts(p, len))
    }
}

unsafe fn put<T>(out: *mut T, value: T, what: &str) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null(what));
    }
    out.write(value);
    Ok(())
}

unsafe fn put_graph(out: *mut *mut HdHypergraph, h: Hypergraph) -> Result<HdStatus, Failure> {
    put(out, Box::into_raw(Box::new(HdHypergraph(h))), "out")?;
    Ok(HdStatus::Ok)
}

unsafe fn put_string(out: *mut *mut c_char, s: String) -> Result<(), Failure> {
    let c = CString::new(s).map_err(|_| Failure(HdStatus::Internal, "string contains NUL".into()))?;
    put(out, c.into_raw(), "out")
}

unsafe fn put_json<T: serde::Serialize>(out: *mut *mut c_char, value: &T) -> Result<(), Failure> {
    let s = serde_json::to_string(value).map_err(|e| Failure(HdStatus::Internal, e.to_string()))?;
    put_string(out, s)
}

fn budget(nodes: u64) -> Budget {
    if nodes == 0 {
        Budget::default()
    } else {
        Budget::new(nodes)
    }
}

/// Writes the witness JSON (or `null`) and maps the outcome to a status.
unsafe fn finish_search<T: serde::Serialize>(out: *mut *mut c_char, outcome: SearchOutcome<T>) -> Result<HdStatus, Failure> {
    let status = if outcome.is_found() {
        HdStatus::Ok
    } else if outcome.is_exhausted() {
        HdStatus::BudgetExhausted
    } else {
        HdStatus::NotFound
    };
    put_json(out, &outcome.found())?;
    Ok(status)
}

/// Message of the most recent failure on this thread, or an empty string.
/// The pointer stays valid until the next library call on this thread.
#[no_mangle]
pub extern "C" fn hd_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn hd_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses the text format: a `n k` header line, then one edge per line.
///
/// # Safety
/// `text` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn hd_hypergraph_parse(text: *const c_char, out: *mut *mut HdHypergraph) -> HdStatus {
    guard(|| {
        if text.is_null() {
            return Err(null("text"));
        }
        let text = CStr::from_ptr(text).to_str().map_err(|_| invalid("text is not UTF-8"))?;
        put_graph(out, parse_hypergraph(text)?)
    })
}

/// Builds a `k`-graph on `[n]` from `edge_count * k` 1-based vertices laid
/// out edge after edge.
///
/// # Safety
/// `vertices` must point to `edge_count * k` readable values; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn hd_hypergraph_new(
    n: usize,
    k: usize,
    vertices: *const u32,
    edge_count: usize,
    out: *mut *mut HdHypergraph,
) -> HdStatus {
    guard(|| {
        if k == 0 {
            return Err(invalid("k must be positive"));
        }
        let len = edge_count.checked_mul(k).ok_or_else(|| invalid("edge array too large"))?;
        let flat = slice(vertices, len, "vertices")?;
        let lists: Vec<&[u32]> = flat.chunks(k).collect();
        put_graph(out, Hypergraph::from_lists(n, k, &lists)?)
    })
}

/// Releases a hypergraph. Null is ignored.
///
/// # Safety
/// `h` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn hd_hypergraph_free(h: *mut HdHypergraph) {
    if !h.is_null() {
        drop(Box::from_raw(h));
    }
}

/// Vertex count; 0 for null.
///
/// # Safety
/// `h` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn hd_hypergraph_n(h: *const HdHypergraph) -> usize {
    h.as_ref().map_or(0, |h| h.0.n())
}

/// Uniformity; 0 for null.
///
/// # Safety
/// `h` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn hd_hypergraph_k(h: *const HdHypergraph) -> usize {
    h.as_ref().map_or(0, |h| h.0.k())
}

/// Edge count; 0 for null.
///
/// # Safety
/// `h` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn hd_hypergraph_edge_count(h: *const HdHypergraph) -> usize {
    h.as_ref().map_or(0, |h| h.0.len())
}

/// Copies the `index`-th edge (lexicographic order) into `out`, which must
/// hold `k` values.
///
/// # Safety
/// `h` must be a live handle; `out` must have room for `k` values.
#[no_mangle]
pub unsafe extern "C" fn hd_hypergraph_edge(h: *const HdHypergraph, index: usize, out: *mut u32) -> HdStatus {
    guard(|| {
        let h = graph(h)?;
        let e = h
            .edges()
            .get(index)
            .ok_or_else(|| invalid(format!("edge index {index} out of range")))?;
        if out.is_null() {
            return Err(null("out"));
        }
        for (i, v) in e.iter().enumerate() {
            out.add(i).write(v);
        }
        Ok(HdStatus::Ok)
    })
}

/// Text-format serialisation.
///
/// # Safety
/// `h` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn hd_hypergraph_serialize(h: *const HdHypergraph, out: *mut *mut c_char) -> HdStatus {
    guard(|| {
        put_string(out, serialize_hypergraph(graph(h)?))?;
        Ok(HdStatus::Ok)
    })
}

/// Number of distinct `(k - level)`-subsets of edges.
///
/// # Safety
/// `h` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn hd_shadow_size(h: *const HdHypergraph, level: usize, out: *mut usize) -> HdStatus {
    guard(|| {
        put(out, graph(h)?.shadow(level)?.len(), "out")?;
        Ok(HdStatus::Ok)
    })
}

/// Number of edges containing the given vertex set.
///
/// # Safety
/// `h` must be a live handle; `vertices` must hold `len` values; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn hd_codegree(h: *const HdHypergraph, vertices: *const u32, len: usize, out: *mut usize) -> HdStatus {
    guard(|| {
        let h = graph(h)?;
        let s = VertexSet::from_vertices(slice(vertices, len, "vertices")?.iter().copied())?;
        put(out, h.codegree(s), "out")?;
        Ok(HdStatus::Ok)
    })
}

/// Largest pair codegree of a 3-graph.
///
/// # Safety
/// `h` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn hd_max_codegree2(h: *const HdHypergraph, out: *mut usize) -> HdStatus {
    guard(|| {
        put(out, graph(h)?.max_codegree2()?, "out")?;
        Ok(HdStatus::Ok)
    })
}

/// Sum of edge weights as an exact rational string such as `"17/2"`.
///
/// # Safety
/// `h` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn hd_total_weight(h: *const HdHypergraph, out: *mut *mut c_char) -> HdStatus {
    guard(|| {
        put_string(out, graph(h)?.total_weight().to_string())?;
        Ok(HdStatus::Ok)
    })
}

/// `s` edges pairwise meeting exactly in `center`. Writes the witness JSON,
/// or `null` with [`HdStatus::NotFound`].
///
/// # Safety
/// `h` must be a live handle; `center` must hold `center_len` values; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn hd_find_sunflower(
    h: *const HdHypergraph,
    center: *const u32,
    center_len: usize,
    s: usize,
    out: *mut *mut c_char,
) -> HdStatus {
    guard(|| {
        let h = graph(h)?;
        let c = VertexSet::from_vertices(slice(center, center_len, "center")?.iter().copied())?;
        let w = find_sunflower(h, c, s)?;
        let status = if w.is_some() { HdStatus::Ok } else { HdStatus::NotFound };
        put_json(out, &w)?;
        Ok(status)
    })
}

/// Searches for an `(a, d)`-Δ-system. `budget_nodes` is a node limit, 0 for the default.
///
/// # Safety
/// `h` must be a live handle; `a` must hold `a_len` values; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn hd_find_avd(
    h: *const HdHypergraph,
    a: *const usize,
    a_len: usize,
    d: usize,
    budget_nodes: u64,
    out: *mut *mut c_char,
) -> HdStatus {
    guard(|| {
        let h = graph(h)?;
        let a = slice(a, a_len, "a")?;
        finish_search(out, find_avd_system(h, a, d, &budget(budget_nodes))?)
    })
}

/// Searches for `t` edges forming a non-trivial `d`-wise intersecting family.
/// `budget_nodes` is a node limit, 0 for the default.
///
/// # Safety
/// `h` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn hd_find_nontrivial(
    h: *const HdHypergraph,
    t: usize,
    d: usize,
    budget_nodes: u64,
    out: *mut *mut c_char,
) -> HdStatus {
    guard(|| {
        let h = graph(h)?;
        finish_search(out, find_nontrivial_subfamily(h, t, d, &budget(budget_nodes))?)
    })
}

/// All `k`-sets of `[n]` containing vertex 1.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn hd_build_star(n: usize, k: usize, out: *mut *mut HdHypergraph) -> HdStatus {
    guard(|| put_graph(out, build_star(n, k)?))
}

/// A simple triple system on `[n]` covering every pair exactly `lambda` times.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn hd_build_triple_system(n: usize, lambda: usize, seed: u64, out: *mut *mut HdHypergraph) -> HdStatus {
    guard(|| put_graph(out, build_triple_system(DesignSpec::new(n, lambda)?, seed)?))
}

/// Design with `lambda = m - 1` plus a perfect matching of its complement.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn hd_build_counterexample(n: usize, m: usize, seed: u64, out: *mut *mut HdHypergraph) -> HdStatus {
    guard(|| put_graph(out, build_counterexample(n, m, seed)?.0))
}

/// Checks that no `3m + 1` edges form a non-trivial intersecting family and
/// writes the report JSON. Verified maps to [`HdStatus::Ok`], refuted to
/// [`HdStatus::NotFound`], conditional or inconclusive to
/// [`HdStatus::BudgetExhausted`].
///
/// # Safety
/// `h` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn hd_verify_counterexample(
    h: *const HdHypergraph,
    m: usize,
    mode: HdVerifyMode,
    budget_nodes: u64,
    out: *mut *mut c_char,
) -> HdStatus {
    guard(|| {
        let h = graph(h)?;
        let mode = match mode {
            HdVerifyMode::DegreeArgument => VerifyMode::DegreeArgument,
            HdVerifyMode::Exhaustive => VerifyMode::Exhaustive,
            HdVerifyMode::Both => VerifyMode::Both,
        };
        let report = verify_counterexample(h, m, mode, &budget(budget_nodes))?;
        put_json(out, &report)?;
        Ok(match report.conclusion {
            Conclusion::Verified => HdStatus::Ok,
            Conclusion::Failed => HdStatus::NotFound,
            Conclusion::Conditional | Conclusion::Inconclusive => HdStatus::BudgetExhausted,
        })
    })
}
