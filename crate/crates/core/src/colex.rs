//! Colex order and initial colex segments `C_{m,T}`.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::hypergraph::{k_subsets, Edge, EdgeTypeSet, Hypergraph, MAX_VERTICES};

/// `A < B` in colex order iff `max(A △ B) ∈ B`. Sets may differ in size.
pub fn colex_less(a: &[usize], b: &[usize]) -> Result<bool> {
    let a: BTreeSet<usize> = a.iter().copied().collect();
    let b: BTreeSet<usize> = b.iter().copied().collect();
    match a.symmetric_difference(&b).max() {
        None => Err(Error::EqualSets),
        Some(top) => Ok(b.contains(top)),
    }
}

/// Colex comparison on bit-mask edges: plain integer order.
pub fn colex_less_edges(a: Edge, b: Edge) -> Result<bool> {
    if a == b {
        return Err(Error::EqualSets);
    }
    Ok(a.mask() < b.mask())
}

/// `C_{m,T}`: the first `m` finite subsets of the positive integers with
/// cardinality in `T`, in colex order. The vertex count is the largest
/// vertex used.
pub fn colex_first_m(types: &EdgeTypeSet, m: usize) -> Result<Hypergraph> {
    if m == 0 {
        return Err(Error::InvalidArgument("m must be at least 1".into()));
    }
    // one colex stream per level, merged by mask
    let mut streams: Vec<_> = types.iter().map(|r| k_subsets(MAX_VERTICES, r).peekable()).collect();
    let mut edges = Vec::with_capacity(m);
    while edges.len() < m {
        let next = streams
            .iter_mut()
            .enumerate()
            .filter_map(|(k, s)| s.peek().map(|e| (e.mask(), k)))
            .min();
        let Some((_, k)) = next else {
            return Err(Error::TooManyVertices { n: MAX_VERTICES + 1, max: MAX_VERTICES });
        };
        edges.push(streams[k].next().unwrap());
    }
    let n = edges.iter().map(|e| e.max_vertex()).max().unwrap_or(0);
    Ok(Hypergraph::from_edges_dedup(n, edges))
}

/// Number of sets of each listed size inside `[t]`: `Σ_r C(t, r)`.
pub fn count_within(types: &EdgeTypeSet, t: usize) -> u64 {
    types.iter().map(|r| binomial(t, r)).sum()
}

pub fn binomial(n: usize, k: usize) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc as u64
}
