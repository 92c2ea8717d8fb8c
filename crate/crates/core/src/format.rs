//! Line-oriented hypergraph text format.
//!
//! ```text
//! # comment
//! vertices 4
//! 1
//! 1 2 3
//! ```
//!
//! Blank lines and `#` lines are ignored. Each edge lists increasing vertex
//! indices. The writer emits levels by increasing cardinality and edges in
//! colex order.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::hypergraph::{Edge, Hypergraph, MAX_VERTICES};

pub fn parse(text: &str) -> Result<Hypergraph> {
    let mut n: Option<usize> = None;
    let mut edges = Vec::new();
    let mut seen = std::collections::HashSet::new();
    for (k, raw) in text.lines().enumerate() {
        let line_no = k + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let err = |message: String| Error::Parse { line: line_no, message };
        let Some(nv) = n else {
            let mut toks = line.split_whitespace();
            if toks.next() != Some("vertices") {
                return Err(err(format!("expected `vertices N`, found {line:?}")));
            }
            let count = toks
                .next()
                .and_then(|t| t.parse::<usize>().ok())
                .ok_or_else(|| err("missing or invalid vertex count".into()))?;
            if toks.next().is_some() {
                return Err(err("trailing tokens after vertex count".into()));
            }
            if count > MAX_VERTICES {
                return Err(err(format!("at most {MAX_VERTICES} vertices are supported")));
            }
            n = Some(count);
            continue;
        };
        let mut vertices = Vec::new();
        for tok in line.split_whitespace() {
            let v: usize = tok.parse().map_err(|_| err(format!("invalid vertex {tok:?}")))?;
            if v == 0 || v > nv {
                return Err(err(format!("vertex {v} out of range 1..={nv}")));
            }
            if let Some(&prev) = vertices.last() {
                if v <= prev {
                    return Err(err("vertices must be strictly increasing".into()));
                }
            }
            vertices.push(v);
        }
        let e = Edge::from_vertices(&vertices).map_err(|e| err(e.to_string()))?;
        if !seen.insert(e) {
            return Err(err(format!("duplicate edge {e}")));
        }
        edges.push(e);
    }
    let n = n.ok_or(Error::Parse { line: text.lines().count().max(1), message: "missing `vertices N` header".into() })?;
    Hypergraph::new(n, edges)
}

pub fn write(h: &Hypergraph) -> String {
    let mut out = String::new();
    writeln!(out, "vertices {}", h.n()).unwrap();
    for (_, edges) in h.levels() {
        for e in edges {
            writeln!(out, "{e}").unwrap();
        }
    }
    out
}
