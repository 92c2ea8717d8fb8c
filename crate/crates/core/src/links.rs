//! Link sets of a vertex or a pair of vertices.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::hypergraph::{k_subsets, Edge, Hypergraph};

/// Links at one level `r`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LevelLinks {
    /// `E_i^r`: `(r-1)`-sets `A` with `A ∪ {i} ∈ E^r`.
    pub of_i: Vec<Edge>,
    /// `E_j^r` (pair queries only).
    pub of_j: Vec<Edge>,
    /// `E_{ij}^r`: `(r-2)`-sets `B` with `B ∪ {i, j} ∈ E^r`.
    pub pair: Vec<Edge>,
    /// `E_{i\j}^r = E_i^r ∩ (E_j^r)^c`.
    pub i_minus_j: Vec<Edge>,
    /// `E_{j\i}^r`.
    pub j_minus_i: Vec<Edge>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinkSets {
    pub i: usize,
    pub j: Option<usize>,
    pub levels: BTreeMap<usize, LevelLinks>,
}

impl LinkSets {
    pub fn level(&self, r: usize) -> Option<&LevelLinks> {
        self.levels.get(&r)
    }
}

/// `E_i^r` for every level of `h`.
pub fn vertex_link(h: &Hypergraph, i: usize, r: usize) -> Vec<Edge> {
    h.level(r).iter().filter(|e| e.contains(i)).map(|e| e.without(i)).collect()
}

/// `(E_i^r)^c`: `(r-1)`-sets `A ∌ i` with `A ∪ {i}` a non-edge of `[n]^{(r)}`.
pub fn vertex_link_complement(h: &Hypergraph, i: usize, r: usize) -> Vec<Edge> {
    if r == 0 || h.n() == 0 {
        return Vec::new();
    }
    k_subsets(h.n(), r - 1)
        .filter(|a| !a.contains(i) && !h.contains(a.with(i)))
        .collect()
}

/// `(E_{ij}^r)^c`: `(r-2)`-sets `B` avoiding `i, j` with `B ∪ {i, j}` a non-edge.
pub fn pair_link_complement(h: &Hypergraph, i: usize, j: usize, r: usize) -> Vec<Edge> {
    if r < 2 {
        return Vec::new();
    }
    k_subsets(h.n(), r - 2)
        .filter(|b| !b.contains(i) && !b.contains(j) && !h.contains(b.with(i).with(j)))
        .collect()
}

/// Builds `E_i`, and with `j` also `E_j`, `E_{ij}`, `E_{i\j}`, `E_{j\i}`, per level.
pub fn link_sets(h: &Hypergraph, i: usize, j: Option<usize>) -> Result<LinkSets> {
    let n = h.n();
    for v in std::iter::once(i).chain(j) {
        if v == 0 || v > n {
            return Err(Error::VertexOutOfRange { vertex: v, n });
        }
    }
    if j == Some(i) {
        return Err(Error::InvalidArgument(format!("link of a pair needs distinct vertices, got {i} twice")));
    }
    let mut levels = BTreeMap::new();
    for (r, edges) in h.levels() {
        let mut links = LevelLinks { of_i: vertex_link(h, i, r), ..Default::default() };
        if let Some(j) = j {
            links.of_j = vertex_link(h, j, r);
            links.pair = edges
                .iter()
                .filter(|e| e.contains(i) && e.contains(j))
                .map(|e| e.without(i).without(j))
                .collect();
            // A ∈ E_i with A ∌ j and A ∪ {j} not an edge
            links.i_minus_j = links
                .of_i
                .iter()
                .copied()
                .filter(|a| !a.contains(j) && !h.contains(a.with(j)))
                .collect();
            links.j_minus_i = links
                .of_j
                .iter()
                .copied()
                .filter(|a| !a.contains(i) && !h.contains(a.with(i)))
                .collect();
        }
        levels.insert(r, links);
    }
    Ok(LinkSets { i, j, levels })
}
