//! Plain-text hypergraph interchange format.
//!
//! ```text
//! # comment
//! 6 3
//! 1 2 3
//! 4 5 6
//! ```
//!
//! The first non-comment line is `n k`; every later line is one edge given
//! as whitespace-separated 1-based vertices. Blank lines are ignored.

use std::fmt::Write as _;
use std::path::Path;

use crate::error::{Error, Result};
use crate::hypergraph::Hypergraph;
use crate::vertex_set::{VertexSet, MAX_VERTICES};

fn parse_err(line: usize, reason: impl Into<String>) -> Error {
    Error::Parse {
        line,
        reason: reason.into(),
    }
}

pub fn parse_hypergraph(text: &str) -> Result<Hypergraph> {
    let mut header: Option<(usize, usize)> = None;
    let mut edges: Vec<(usize, VertexSet)> = Vec::new();

    for (i, raw) in text.lines().enumerate() {
        let lineno = i + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let nums = line
            .split_whitespace()
            .map(|t| t.parse::<u64>().map_err(|_| parse_err(lineno, format!("not an integer: {t:?}"))))
            .collect::<Result<Vec<_>>>()?;

        let Some((n, k)) = header else {
            if nums.len() != 2 {
                return Err(parse_err(lineno, "header must be \"n k\""));
            }
            let (n, k) = (nums[0] as usize, nums[1] as usize);
            if n == 0 || n > MAX_VERTICES {
                return Err(parse_err(lineno, format!("n={n} outside 1..={MAX_VERTICES}")));
            }
            if k < 2 || k > n {
                return Err(parse_err(lineno, format!("k={k} must satisfy 2 <= k <= n")));
            }
            header = Some((n, k));
            continue;
        };

        if nums.len() != k {
            return Err(parse_err(lineno, format!("edge has {} vertices, expected {k}", nums.len())));
        }
        let mut edge = VertexSet::EMPTY;
        for &v in &nums {
            if v == 0 || v as usize > n {
                return Err(parse_err(lineno, format!("vertex {v} outside [{n}]")));
            }
            if edge.contains(v as u32) {
                return Err(parse_err(lineno, format!("vertex {v} repeated")));
            }
            edge.insert(v as u32);
        }
        edges.push((lineno, edge));
    }

    let (n, k) = header.ok_or_else(|| parse_err(0, "missing \"n k\" header"))?;
    let mut sorted = edges.clone();
    sorted.sort_by_key(|&(_, e)| e);
    if let Some(w) = sorted.windows(2).find(|w| w[0].1 == w[1].1) {
        let line = w[0].0.max(w[1].0);
        return Err(parse_err(line, format!("duplicate edge {}", w[0].1)));
    }
    Hypergraph::new(n, k, edges.into_iter().map(|(_, e)| e))
}

pub fn serialize_hypergraph(h: &Hypergraph) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{} {}", h.n(), h.k());
    for e in h.edges() {
        let mut first = true;
        for v in e.iter() {
            if !first {
                out.push(' ');
            }
            first = false;
            let _ = write!(out, "{v}");
        }
        out.push('\n');
    }
    out
}

pub fn read_hypergraph(path: &Path) -> Result<Hypergraph> {
    let text = std::fs::read_to_string(path)?;
    parse_hypergraph(&text)
}

pub fn write_hypergraph(path: &Path, h: &Hypergraph) -> Result<()> {
    std::fs::write(path, serialize_hypergraph(h))?;
    Ok(())
}
