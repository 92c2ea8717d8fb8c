//! The parametrized Lagrangian `L_α(H, x) = Σ_r α_r Σ_{e ∈ E^r} Π_{v ∈ e} x_v`
//! over the standard simplex, its derivatives, and maximizers.

mod eval;
mod kkt;
mod oracle;
mod simplex;
mod solver;

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hypergraph::EdgeTypeSet;

pub use eval::{evaluate, gradient, hessian, Polynomial};
pub use kkt::{compression_monotonicity_check, kkt_check, link_value, KktReport};
pub use oracle::{exact_oracle, ORACLE_MAX_N};
pub use simplex::{characteristic_vector, project_to_simplex};
pub use solver::{optimize, support_minimize, Optimum, SolverConfig};

/// Tolerance on `|Σ x_i - 1|` for a feasible weighting.
pub const SIMPLEX_TOL: f64 = 1e-12;

/// Per-level coefficients. The base level carries coefficient 1.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AlphaParams {
    base: usize,
    coeffs: BTreeMap<usize, f64>,
}

impl AlphaParams {
    /// `pairs` lists `(level, coefficient)`; the base level may be omitted,
    /// and if present its coefficient must be exactly 1.
    pub fn new(base: usize, pairs: impl IntoIterator<Item = (usize, f64)>) -> Result<Self> {
        if base == 0 {
            return Err(Error::InvalidAlpha("base level must be positive".into()));
        }
        let mut coeffs = BTreeMap::new();
        coeffs.insert(base, 1.0);
        for (r, a) in pairs {
            if r == 0 {
                return Err(Error::InvalidAlpha("level 0 has no edges".into()));
            }
            if !a.is_finite() || a < 0.0 {
                return Err(Error::InvalidAlpha(format!("alpha_{r} = {a} must be finite and nonnegative")));
            }
            if r == base && a != 1.0 {
                return Err(Error::InvalidAlpha(format!("base level {r} must have coefficient 1, got {a}")));
            }
            coeffs.insert(r, a);
        }
        Ok(AlphaParams { base, coeffs })
    }

    /// Base level `min(T)`.
    pub fn for_types(types: &EdgeTypeSet, pairs: impl IntoIterator<Item = (usize, f64)>) -> Result<Self> {
        Self::new(types.min(), pairs)
    }

    /// Every level in `types` with coefficient 1.
    pub fn ones(types: &EdgeTypeSet) -> Self {
        AlphaParams { base: types.min(), coeffs: types.iter().map(|r| (r, 1.0)).collect() }
    }

    pub fn base(&self) -> usize {
        self.base
    }

    pub fn coefficient(&self, r: usize) -> Option<f64> {
        self.coeffs.get(&r).copied()
    }

    pub fn levels(&self) -> impl Iterator<Item = (usize, f64)> + '_ {
        self.coeffs.iter().map(|(&r, &a)| (r, a))
    }

    /// `Σ α_r / (r-1)!` over the listed levels of cardinality at least 2;
    /// missing coefficients count as 0.
    pub fn factorial_budget(&self, types: &EdgeTypeSet) -> f64 {
        types
            .iter()
            .filter(|&r| r >= 2)
            .map(|r| self.coefficient(r).unwrap_or(0.0) / factorial(r - 1))
            .sum()
    }
}

pub fn factorial(k: usize) -> f64 {
    (1..=k).map(|i| i as f64).product()
}

/// A point of the standard simplex.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Weighting(Vec<f64>);

impl Weighting {
    pub fn new(x: Vec<f64>) -> Result<Self> {
        if x.is_empty() {
            return Err(Error::InfeasibleWeighting("empty vector".into()));
        }
        if let Some((i, v)) = x.iter().enumerate().find(|(_, v)| !v.is_finite() || **v < 0.0) {
            return Err(Error::InfeasibleWeighting(format!("x_{} = {v}", i + 1)));
        }
        let s: f64 = x.iter().sum();
        if (s - 1.0).abs() > SIMPLEX_TOL {
            return Err(Error::InfeasibleWeighting(format!("weights sum to {s}")));
        }
        Ok(Weighting(x))
    }

    pub(crate) fn from_raw(x: Vec<f64>) -> Self {
        Weighting(x)
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    pub fn into_vec(self) -> Vec<f64> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// 1-based vertices with weight above `threshold`.
    pub fn support(&self, threshold: f64) -> Vec<usize> {
        self.0.iter().enumerate().filter(|(_, &v)| v > threshold).map(|(i, _)| i + 1).collect()
    }
}
