use serde::{Deserialize, Serialize};

use crate::compress::compress_set;
use crate::error::{Error, Result};
use crate::hypergraph::{Edge, Hypergraph};

use super::eval::Polynomial;
use super::{AlphaParams, Weighting};

/// Optimality diagnostics at a feasible weighting.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct KktReport {
    pub support: Vec<usize>,
    /// `max |∂L/∂x_i - ∂L/∂x_j|` over support pairs.
    pub residual: f64,
    /// Support pairs `(i, j)`, `i < j`, contained in no common edge.
    pub uncovered_pairs: Vec<(usize, usize)>,
    /// `residual <= tol`.
    pub stationary: bool,
}

/// Checks equal partial derivatives across the support and reports support
/// pairs not covered by an edge. Uses a support threshold of `1e-9`.
pub fn kkt_check(h: &Hypergraph, alpha: &AlphaParams, x: &Weighting, tol: f64) -> Result<KktReport> {
    if x.len() != h.n() {
        return Err(Error::DimensionMismatch { expected: h.n(), got: x.len() });
    }
    let poly = Polynomial::new(h, alpha)?;
    let g = poly.gradient(x.as_slice());
    let support = x.support(1e-9);
    let mut hi = f64::NEG_INFINITY;
    let mut lo = f64::INFINITY;
    for &v in &support {
        hi = hi.max(g[v - 1]);
        lo = lo.min(g[v - 1]);
    }
    let residual = if support.len() > 1 { hi - lo } else { 0.0 };
    let covered = poly.covered_pairs();
    let mut uncovered_pairs = Vec::new();
    for (a, &i) in support.iter().enumerate() {
        for &j in &support[a + 1..] {
            if covered[i - 1] >> (j - 1) & 1 == 0 {
                uncovered_pairs.push((i, j));
            }
        }
    }
    Ok(KktReport { support, residual, uncovered_pairs, stationary: residual <= tol })
}

/// `Σ_r α_r Σ_{A ∈ sets^r} Π_{v ∈ A} x_v` for per-level link sets; the
/// empty set contributes 1.
pub fn link_value<'a>(
    alpha: &AlphaParams,
    levels: impl IntoIterator<Item = (usize, &'a [Edge])>,
    x: &[f64],
) -> Result<f64> {
    let mut total = 0.0;
    for (r, sets) in levels {
        let a = alpha.coefficient(r).ok_or(Error::MissingAlpha(r))?;
        let s: f64 = sets.iter().map(|e| e.vertices().map(|v| x[v - 1]).product::<f64>()).sum();
        total += a * s;
    }
    Ok(total)
}

/// Whether `L(H, x) <= L(C_{i←j}(H), x)` (up to `1e-12`) for `i < j`
/// with `x_i >= x_j`.
pub fn compression_monotonicity_check(
    h: &Hypergraph,
    alpha: &AlphaParams,
    x: &Weighting,
    i: usize,
    j: usize,
) -> Result<bool> {
    if i >= j || i == 0 {
        return Err(Error::CompressionOrder { i, j });
    }
    if x.len() != h.n() {
        return Err(Error::DimensionMismatch { expected: h.n(), got: x.len() });
    }
    if j > h.n() {
        return Err(Error::VertexOutOfRange { vertex: j, n: h.n() });
    }
    let w = x.as_slice();
    if w[i - 1] < w[j - 1] {
        return Err(Error::InvalidArgument(format!(
            "needs x_{i} >= x_{j}, got {} < {}",
            w[i - 1],
            w[j - 1]
        )));
    }
    let before = Polynomial::new(h, alpha)?.value(w);
    let after = Polynomial::new(&compress_set(h, i, j)?, alpha)?.value(w);
    Ok(after >= before - 1e-12)
}
