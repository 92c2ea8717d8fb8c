//! Complete sub-hypergraphs ("cliques") with a prescribed edge type.
//!
//! A vertex set `W` with `|W| >= min(Q)` is a `Q`-clique when every subset
//! of `W` whose size lies in `Q` is an edge.

use itertools::Itertools;

use crate::error::{Error, Result};
use crate::hypergraph::{Edge, EdgeTypeSet, Hypergraph};

fn check_types(h: &Hypergraph, q: &EdgeTypeSet) -> Result<()> {
    let ok = h.edge_types().is_some_and(|t| q.is_subset_of(&t));
    if !ok {
        return Err(Error::InvalidArgument(format!(
            "clique type {q} is not contained in the edge types of the graph"
        )));
    }
    Ok(())
}

/// Whether `W ∪ {v}` stays a clique, given that `W` already is one.
fn extends(h: &Hypergraph, q: &EdgeTypeSet, w: &[usize], v: usize) -> bool {
    let ve = Edge::singleton(v);
    q.iter().all(|r| {
        if r > w.len() + 1 {
            return true;
        }
        w.iter().copied().combinations(r - 1).all(|rest| {
            let mut e = ve;
            for u in rest {
                e = e.with(u);
            }
            h.contains(e)
        })
    })
}

struct Search<'a> {
    h: &'a Hypergraph,
    q: &'a EdgeTypeSet,
    best: Vec<usize>,
}

impl Search<'_> {
    fn expand(&mut self, current: &mut Vec<usize>, candidates: &[usize]) {
        if current.len() > self.best.len() && current.len() >= self.q.min() {
            self.best = current.clone();
        }
        for (k, &v) in candidates.iter().enumerate() {
            if current.len() + candidates.len() - k <= self.best.len() {
                return;
            }
            current.push(v);
            let next: Vec<usize> = candidates[k + 1..]
                .iter()
                .copied()
                .filter(|&u| extends(self.h, self.q, current, u))
                .collect();
            self.expand(current, &next);
            current.pop();
        }
    }
}

/// A maximum `Q`-clique (vertices ascending); empty when none exists.
pub fn max_clique(h: &Hypergraph, q: &EdgeTypeSet) -> Result<Vec<usize>> {
    check_types(h, q)?;
    let candidates: Vec<usize> =
        (1..=h.n()).filter(|&v| !q.contains(1) || h.contains(Edge::singleton(v))).collect();
    let mut search = Search { h, q, best: Vec::new() };
    search.expand(&mut Vec::new(), &candidates);
    Ok(search.best)
}

/// Order of a maximum `Q`-clique, 0 if there is none.
pub fn max_clique_order(h: &Hypergraph, q: &EdgeTypeSet) -> Result<usize> {
    Ok(max_clique(h, q)?.len())
}

/// Maximal `Q`-cliques in lexicographic discovery order, at most `limit`.
/// Sets smaller than `min(Q)` are skipped.
pub fn maximal_cliques(h: &Hypergraph, q: &EdgeTypeSet, limit: usize) -> Vec<Edge> {
    fn walk(
        h: &Hypergraph,
        q: &EdgeTypeSet,
        current: &mut Vec<usize>,
        candidates: &[usize],
        excluded: &[usize],
        out: &mut Vec<Edge>,
        limit: usize,
    ) {
        if out.len() >= limit {
            return;
        }
        if candidates.is_empty() {
            if excluded.is_empty() && current.len() >= q.min() {
                out.push(Edge::from_vertices(current).expect("valid vertices"));
            }
            return;
        }
        let mut excluded = excluded.to_vec();
        for (k, &v) in candidates.iter().enumerate() {
            current.push(v);
            let keep = |u: &usize| extends(h, q, current, *u);
            let next_c: Vec<usize> = candidates[k + 1..].iter().copied().filter(keep).collect();
            let next_x: Vec<usize> = excluded.iter().copied().filter(keep).collect();
            walk(h, q, current, &next_c, &next_x, out, limit);
            current.pop();
            excluded.push(v);
            if out.len() >= limit {
                return;
            }
        }
    }

    let candidates: Vec<usize> =
        (1..=h.n()).filter(|&v| !q.contains(1) || h.contains(Edge::singleton(v))).collect();
    let mut out = Vec::new();
    walk(h, q, &mut Vec::new(), &candidates, &[], &mut out, limit);
    out
}
