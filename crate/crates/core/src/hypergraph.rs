//! Non-uniform hypergraphs on the vertex set `1..=n`.
//!
//! Edges are stored as bit masks (vertex `v` is bit `v - 1`). With that
//! encoding the numeric order of masks coincides with the colex order on
//! finite sets, for mixed cardinalities as well, so every level is kept
//! sorted by mask and membership is a binary search.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest supported vertex index.
pub const MAX_VERTICES: usize = 64;

/// A finite vertex set, used both for edges and for link sets.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
pub struct Edge(u64);

impl Edge {
    pub const EMPTY: Edge = Edge(0);

    pub fn from_mask(mask: u64) -> Self {
        Edge(mask)
    }

    /// Builds a set from distinct vertices in `1..=64`, in any order.
    pub fn from_vertices(vertices: &[usize]) -> Result<Self> {
        let mut mask = 0u64;
        for &v in vertices {
            if v == 0 || v > MAX_VERTICES {
                return Err(Error::VertexOutOfRange { vertex: v, n: MAX_VERTICES });
            }
            let bit = 1u64 << (v - 1);
            if mask & bit != 0 {
                return Err(Error::InvalidEdge(format!("vertex {v} repeated")));
            }
            mask |= bit;
        }
        Ok(Edge(mask))
    }

    pub fn singleton(v: usize) -> Self {
        debug_assert!((1..=MAX_VERTICES).contains(&v));
        Edge(1u64 << (v - 1))
    }

    pub fn mask(self) -> u64 {
        self.0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, v: usize) -> bool {
        (1..=MAX_VERTICES).contains(&v) && self.0 & (1u64 << (v - 1)) != 0
    }

    pub fn with(self, v: usize) -> Self {
        Edge(self.0 | (1u64 << (v - 1)))
    }

    pub fn without(self, v: usize) -> Self {
        Edge(self.0 & !(1u64 << (v - 1)))
    }

    pub fn is_subset_of(self, other: Edge) -> bool {
        self.0 & !other.0 == 0
    }

    /// Largest vertex, or 0 for the empty set.
    pub fn max_vertex(self) -> usize {
        64 - self.0.leading_zeros() as usize
    }

    /// Vertices in increasing order.
    pub fn vertices(self) -> Vertices {
        Vertices(self.0)
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.vertices().collect()
    }
}

pub struct Vertices(u64);

impl Iterator for Vertices {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let tz = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(tz + 1)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let k = self.0.count_ones() as usize;
        (k, Some(k))
    }
}

impl ExactSizeIterator for Vertices {}

impl fmt::Debug for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, v) in self.vertices().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "}}")
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, v) in self.vertices().enumerate() {
            if k > 0 {
                write!(f, " ")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

/// Strictly increasing, nonempty list of edge cardinalities.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct EdgeTypeSet(Vec<usize>);

impl EdgeTypeSet {
    pub fn new(types: Vec<usize>) -> Result<Self> {
        if types.is_empty() {
            return Err(Error::InvalidTypes("empty".into()));
        }
        if types[0] == 0 {
            return Err(Error::InvalidTypes("cardinalities must be positive".into()));
        }
        if types.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidTypes(format!("{types:?} is not strictly increasing")));
        }
        if *types.last().unwrap() > MAX_VERTICES {
            return Err(Error::InvalidTypes("cardinality exceeds vertex limit".into()));
        }
        Ok(EdgeTypeSet(types))
    }

    pub fn single(r: usize) -> Result<Self> {
        Self::new(vec![r])
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().copied()
    }

    pub fn contains(&self, r: usize) -> bool {
        self.0.binary_search(&r).is_ok()
    }

    pub fn min(&self) -> usize {
        self.0[0]
    }

    pub fn max(&self) -> usize {
        *self.0.last().unwrap()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn is_subset_of(&self, other: &EdgeTypeSet) -> bool {
        self.iter().all(|r| other.contains(r))
    }

    /// The types with `r` removed; `None` if nothing remains.
    pub fn without(&self, r: usize) -> Option<EdgeTypeSet> {
        let rest: Vec<usize> = self.iter().filter(|&q| q != r).collect();
        (!rest.is_empty()).then_some(EdgeTypeSet(rest))
    }
}

impl TryFrom<Vec<usize>> for EdgeTypeSet {
    type Error = Error;

    fn try_from(v: Vec<usize>) -> Result<Self> {
        EdgeTypeSet::new(v)
    }
}

impl From<EdgeTypeSet> for Vec<usize> {
    fn from(t: EdgeTypeSet) -> Self {
        t.0
    }
}

impl FromStr for EdgeTypeSet {
    type Err = Error;

    /// Parses `"1,3"`; entries are sorted and deduplicated.
    fn from_str(s: &str) -> Result<Self> {
        let mut types = s
            .split(',')
            .map(|tok| {
                tok.trim()
                    .parse::<usize>()
                    .map_err(|_| Error::InvalidTypes(format!("bad entry {tok:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        types.sort_unstable();
        types.dedup();
        EdgeTypeSet::new(types)
    }
}

impl fmt::Display for EdgeTypeSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|r| r.to_string()).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

/// A hypergraph on `[n]` with edges grouped by cardinality.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Hypergraph {
    n: usize,
    levels: BTreeMap<usize, Vec<Edge>>,
}

impl Hypergraph {
    pub fn empty(n: usize) -> Result<Self> {
        if n > MAX_VERTICES {
            return Err(Error::TooManyVertices { n, max: MAX_VERTICES });
        }
        Ok(Hypergraph { n, levels: BTreeMap::new() })
    }

    /// Builds a hypergraph, rejecting empty edges, duplicates and
    /// out-of-range vertices.
    pub fn new(n: usize, edges: impl IntoIterator<Item = Edge>) -> Result<Self> {
        let mut h = Self::empty(n)?;
        for e in edges {
            if e.is_empty() {
                return Err(Error::InvalidEdge("empty edge".into()));
            }
            if e.max_vertex() > n {
                return Err(Error::VertexOutOfRange { vertex: e.max_vertex(), n });
            }
            h.levels.entry(e.len()).or_default().push(e);
        }
        for edges in h.levels.values_mut() {
            edges.sort_unstable();
            if let Some(w) = edges.windows(2).find(|w| w[0] == w[1]) {
                return Err(Error::InvalidEdge(format!("duplicate edge {:?}", w[0])));
            }
        }
        Ok(h)
    }

    /// Convenience constructor from vertex lists.
    pub fn from_lists<S: AsRef<[usize]>>(n: usize, edges: &[S]) -> Result<Self> {
        let edges = edges
            .iter()
            .map(|e| Edge::from_vertices(e.as_ref()))
            .collect::<Result<Vec<_>>>()?;
        Self::new(n, edges)
    }

    /// Like [`Hypergraph::new`] but silently drops duplicates.
    pub(crate) fn from_edges_dedup(n: usize, edges: impl IntoIterator<Item = Edge>) -> Self {
        let mut levels: BTreeMap<usize, Vec<Edge>> = BTreeMap::new();
        for e in edges {
            debug_assert!(!e.is_empty() && e.max_vertex() <= n);
            levels.entry(e.len()).or_default().push(e);
        }
        for edges in levels.values_mut() {
            edges.sort_unstable();
            edges.dedup();
        }
        Hypergraph { n, levels }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// `T(H)`, or `None` when there are no edges.
    pub fn edge_types(&self) -> Option<EdgeTypeSet> {
        let types: Vec<usize> = self.levels.keys().copied().collect();
        (!types.is_empty()).then_some(EdgeTypeSet(types))
    }

    pub fn levels(&self) -> impl Iterator<Item = (usize, &[Edge])> + '_ {
        self.levels.iter().map(|(&r, e)| (r, e.as_slice()))
    }

    /// Edges of cardinality `r` in colex order.
    pub fn level(&self, r: usize) -> &[Edge] {
        self.levels.get(&r).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn edges(&self) -> impl Iterator<Item = Edge> + '_ {
        self.levels.values().flat_map(|e| e.iter().copied())
    }

    pub fn edge_count(&self) -> usize {
        self.levels.values().map(Vec::len).sum()
    }

    pub fn level_counts(&self) -> BTreeMap<usize, usize> {
        self.levels.iter().map(|(&r, e)| (r, e.len())).collect()
    }

    pub fn is_empty(&self) -> bool {
        self.levels.is_empty()
    }

    pub fn contains(&self, e: Edge) -> bool {
        self.levels.get(&e.len()).is_some_and(|l| l.binary_search(&e).is_ok())
    }

    /// Largest vertex appearing in an edge.
    pub fn max_used_vertex(&self) -> usize {
        self.edges().map(Edge::max_vertex).max().unwrap_or(0)
    }

    /// Same edges on a different vertex count.
    pub fn with_vertex_count(&self, n: usize) -> Result<Self> {
        if n > MAX_VERTICES {
            return Err(Error::TooManyVertices { n, max: MAX_VERTICES });
        }
        if self.max_used_vertex() > n {
            return Err(Error::VertexOutOfRange { vertex: self.max_used_vertex(), n });
        }
        Ok(Hypergraph { n, levels: self.levels.clone() })
    }

    /// `H^Q`: only the levels listed in `q`.
    pub fn restrict_levels(&self, q: &EdgeTypeSet) -> Hypergraph {
        let levels = self
            .levels
            .iter()
            .filter(|(r, _)| q.contains(**r))
            .map(|(&r, e)| (r, e.clone()))
            .collect();
        Hypergraph { n: self.n, levels }
    }

    /// `V(H^1)`: vertices carrying a level-1 edge.
    pub fn level_one_vertices(&self) -> Vec<usize> {
        self.level(1).iter().map(|e| e.max_vertex()).collect()
    }

    /// Whether every edge of `self` is an edge of `other` (same vertex labels).
    pub fn is_subgraph_of(&self, other: &Hypergraph) -> bool {
        self.n <= other.n && self.edges().all(|e| other.contains(e))
    }
}

impl fmt::Debug for Hypergraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Hypergraph(n={}, ", self.n)?;
        f.debug_list().entries(self.edges()).finish()?;
        write!(f, ")")
    }
}

/// `K_n^T`: every subset of `[n]` whose size lies in `T`.
pub fn complete(types: &EdgeTypeSet, n: usize) -> Result<Hypergraph> {
    if n < types.max() {
        return Err(Error::InvalidArgument(format!(
            "complete graph needs n >= {}, got {n}",
            types.max()
        )));
    }
    if n > MAX_VERTICES {
        return Err(Error::TooManyVertices { n, max: MAX_VERTICES });
    }
    let mut levels = BTreeMap::new();
    for r in types.iter() {
        levels.insert(r, k_subsets(n, r).collect());
    }
    Ok(Hypergraph { n, levels })
}

/// All `r`-subsets of `[n]` in colex order (Gosper's hack).
pub fn k_subsets(n: usize, r: usize) -> impl Iterator<Item = Edge> {
    let limit: u128 = 1u128 << n;
    let mut next: Option<u128> = (r <= n).then(|| (1u128 << r) - 1);
    std::iter::from_fn(move || {
        let cur = next?;
        if cur >= limit {
            next = None;
            return None;
        }
        next = if cur == 0 {
            None
        } else {
            let c = cur & cur.wrapping_neg();
            let rr = cur + c;
            Some((((rr ^ cur) >> 2) / c) | rr)
        };
        Some(Edge(cur as u64))
    })
}

/// `H[W]` relabelled onto `1..=|W|` preserving order. The second component
/// maps new labels to old ones (`map[k - 1]` is the old label of `k`).
pub fn induced(h: &Hypergraph, w: &[usize]) -> Result<(Hypergraph, Vec<usize>)> {
    let mut map: Vec<usize> = w.to_vec();
    map.sort_unstable();
    map.dedup();
    if let Some(&v) = map.iter().find(|&&v| v == 0 || v > h.n) {
        return Err(Error::VertexOutOfRange { vertex: v, n: h.n });
    }
    let wmask = Edge::from_vertices(&map)?;
    let mut new_label = [0usize; MAX_VERTICES + 1];
    for (k, &v) in map.iter().enumerate() {
        new_label[v] = k + 1;
    }
    let edges = h.edges().filter(|e| e.is_subset_of(wmask)).map(|e| {
        let mut m = 0u64;
        for v in e.vertices() {
            m |= 1u64 << (new_label[v] - 1);
        }
        Edge(m)
    });
    let g = Hypergraph::from_edges_dedup(map.len(), edges);
    Ok((g, map))
}

/// `D(H)`: level-1 vertices contained in no edge of cardinality at least 2.
pub fn isolated_vertices(h: &Hypergraph) -> Vec<usize> {
    let mut covered = 0u64;
    for (r, edges) in h.levels() {
        if r >= 2 {
            for e in edges {
                covered |= e.mask();
            }
        }
    }
    h.level(1)
        .iter()
        .filter(|e| e.mask() & covered == 0)
        .map(|e| e.max_vertex())
        .collect()
}
