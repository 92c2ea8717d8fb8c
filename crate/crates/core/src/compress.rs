//! Left-compression (shifting) of edge sets.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::hypergraph::{Edge, Hypergraph};

/// `C_{i←j}(e)`: swap `j` for `i` when `i ∉ e` and `j ∈ e`.
pub fn compress_edge(e: Edge, i: usize, j: usize) -> Result<Edge> {
    if i >= j || i == 0 {
        return Err(Error::CompressionOrder { i, j });
    }
    Ok(shift(e, i, j))
}

fn shift(e: Edge, i: usize, j: usize) -> Edge {
    if !e.contains(i) && e.contains(j) {
        e.without(j).with(i)
    } else {
        e
    }
}

/// `C_{i←j}(E) = {C(e) : e ∈ E} ∪ {e : e, C(e) ∈ E}`, applied level by level.
pub fn compress_set(h: &Hypergraph, i: usize, j: usize) -> Result<Hypergraph> {
    if i >= j || i == 0 {
        return Err(Error::CompressionOrder { i, j });
    }
    if j > h.n() {
        return Err(Error::VertexOutOfRange { vertex: j, n: h.n() });
    }
    let mut out = Vec::with_capacity(h.edge_count());
    for (_, edges) in h.levels() {
        let original: BTreeSet<Edge> = edges.iter().copied().collect();
        let mut image: BTreeSet<Edge> = BTreeSet::new();
        for &e in edges {
            let c = shift(e, i, j);
            image.insert(c);
            if original.contains(&c) {
                image.insert(e);
            }
        }
        debug_assert_eq!(image.len(), edges.len());
        out.extend(image);
    }
    Ok(Hypergraph::from_edges_dedup(h.n(), out))
}

/// True iff `compress_set(H, i, j) = H` for every `i < j`.
pub fn is_left_compressed(h: &Hypergraph) -> bool {
    (1..=h.n()).all(|j| (1..j).all(|i| compress_set(h, i, j).map(|c| &c == h).unwrap_or(false)))
}

/// Dominance test: each edge stays an edge after lowering one vertex by one
/// step into a free slot. Equivalent to [`is_left_compressed`] and much
/// cheaper, used in enumeration.
pub fn is_left_compressed_by_dominance(h: &Hypergraph) -> bool {
    h.edges().all(|e| lower_covers(e).all(|c| h.contains(c)))
}

/// Sets obtained from `e` by replacing one `v ∈ e` with `v - 1 ∉ e`.
pub fn lower_covers(e: Edge) -> impl Iterator<Item = Edge> {
    e.vertices()
        .filter(move |&v| v > 1 && !e.contains(v - 1))
        .map(move |v| e.without(v).with(v - 1))
}

/// Applies compressions, sweeping pairs `(i, j)` lexicographically and
/// restarting after any change, until the graph is left-compressed.
pub fn left_compress_fixpoint(h: &Hypergraph) -> Hypergraph {
    let mut cur = h.clone();
    'restart: loop {
        for i in 1..=cur.n() {
            for j in i + 1..=cur.n() {
                let next = compress_set(&cur, i, j).expect("i < j <= n");
                if next != cur {
                    cur = next;
                    continue 'restart;
                }
            }
        }
        return cur;
    }
}
