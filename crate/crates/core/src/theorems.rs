//! Closed-form Lagrangian values and verifiers.
//!
//! Coefficients are indexed by edge cardinality throughout: `α_r` weighs the
//! level-`r` edges, so the `{1,2,3}` formula takes `α_2` and `α_3`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::clique::max_clique_order;
use crate::colex::{binomial, colex_first_m, count_within};
use crate::error::{Error, Result};
use crate::hypergraph::{complete, induced, isolated_vertices, EdgeTypeSet, Hypergraph};
use crate::lagrangian::{exact_oracle, factorial, optimize, AlphaParams, Optimum, SolverConfig};

/// Motzkin–Straus value `λ(K_t^{(2)}) = (1 - 1/t) / 2`.
pub fn ms_value(t: usize) -> Result<f64> {
    if t == 0 {
        return Err(Error::InvalidArgument("clique order must be at least 1".into()));
    }
    Ok(0.5 * (1.0 - 1.0 / t as f64))
}

/// `L(K_t^{{1,2}}) = 1 + α_2/2 - α_2/(2t)`.
pub fn th2_value(alpha2: f64, t: usize) -> Result<f64> {
    if t == 0 {
        return Err(Error::InvalidArgument("clique order must be at least 1".into()));
    }
    Ok(1.0 + alpha2 / 2.0 - alpha2 / (2.0 * t as f64))
}

/// `t >= α_2`, inclusive.
pub fn th2_hypothesis(alpha2: f64, t: usize) -> bool {
    t as f64 >= alpha2
}

/// `L(K_t^{{1,r}}) = 1 + α_r Π_{i=1}^{r-1}(t - i) / (r! t^{r-1})`.
pub fn th1r_value(alpha_r: f64, r: usize, t: usize) -> Result<f64> {
    if r < 2 {
        return Err(Error::InvalidArgument(format!("level must be at least 2, got {r}")));
    }
    if t == 0 {
        return Err(Error::InvalidArgument("clique order must be at least 1".into()));
    }
    let tf = t as f64;
    let prod: f64 = (1..r).map(|i| tf - i as f64).product();
    Ok(1.0 + alpha_r * prod / (factorial(r) * tf.powi(r as i32 - 1)))
}

/// Clique-order threshold for the `{1,r}` closed form. When
/// `α_r <= (r-2)!` every order qualifies and the threshold is 1.
pub fn th1r_threshold(alpha_r: f64, r: usize) -> Result<usize> {
    if r < 2 {
        return Err(Error::InvalidArgument(format!("level must be at least 2, got {r}")));
    }
    if r == 2 {
        return Ok((alpha_r.ceil() as usize).max(1));
    }
    let f = factorial(r - 2);
    if alpha_r <= f {
        return Ok(1);
    }
    let bound = (alpha_r - f).powi(r as i32 - 2) / (f * alpha_r.powi(r as i32 - 3));
    Ok((bound.ceil() as usize).max(1))
}

pub fn th1r_hypothesis(alpha_r: f64, r: usize, t: usize) -> Result<bool> {
    Ok(t >= th1r_threshold(alpha_r, r)?)
}

/// `L(K_t^{{1,2,3}}) = 1 + α_2 (t-1)/(2t) + α_3 (t-1)(t-2)/(6t^2)`.
pub fn th123_value(alpha2: f64, alpha3: f64, t: usize) -> Result<f64> {
    if t == 0 {
        return Err(Error::InvalidArgument("clique order must be at least 1".into()));
    }
    let tf = t as f64;
    Ok(1.0 + alpha2 * (tf - 1.0) / (2.0 * tf) + alpha3 * (tf - 1.0) * (tf - 2.0) / (6.0 * tf * tf))
}

/// `⌈((α_2 + α_3)^2 - α_3) / (α_2 + α_3)⌉`.
pub fn th123_threshold(alpha2: f64, alpha3: f64) -> Result<usize> {
    let s = alpha2 + alpha3;
    if s <= 0.0 {
        return Err(Error::InvalidArgument("threshold needs alpha_2 + alpha_3 > 0".into()));
    }
    let bound = (s * s - alpha3) / s;
    Ok(bound.ceil().max(1.0) as usize)
}

pub fn th123_hypothesis(alpha2: f64, alpha3: f64, t: usize) -> Result<bool> {
    Ok(t >= th123_threshold(alpha2, alpha3)?)
}

/// Value of `[t]^T` at the uniform weighting: `Σ_r α_r C(t, r) / t^r`.
pub fn complete_uniform_value(types: &EdgeTypeSet, alpha: &AlphaParams, t: usize) -> Result<f64> {
    if t == 0 {
        return Err(Error::InvalidArgument("t must be at least 1".into()));
    }
    let mut total = 0.0;
    for r in types.iter() {
        let a = alpha.coefficient(r).ok_or(Error::MissingAlpha(r))?;
        total += a * binomial(t, r) as f64 / (t as f64).powi(r as i32);
    }
    Ok(total)
}

/// Result of stripping isolated level-1 vertices.
#[derive(Clone, Debug, PartialEq)]
pub enum Reduction {
    /// `H[V(H^1) \ D(H[V(H^1)])]` and its relabelling map (new → old).
    Graph { graph: Hypergraph, map: Vec<usize> },
    /// Every level-1 vertex is isolated inside `H[V(H^1)]`, so `L(H) = 1`.
    UnitValue,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ReductionReport {
    pub reduction: Reduction,
    /// `Σ α_r / (r-1)!` over the levels above 1.
    pub budget: f64,
    pub hypothesis_ok: bool,
}

/// Reduces a graph with level-1 edges to the part where the optimum lives,
/// valid when `Σ α_r/(r-1)! <= 1`.
pub fn reduce_level1(h: &Hypergraph, alpha: &AlphaParams) -> Result<ReductionReport> {
    let types = h
        .edge_types()
        .filter(|t| t.contains(1))
        .ok_or_else(|| Error::InvalidArgument("graph has no level-1 edges".into()))?;
    let budget = alpha.factorial_budget(&types);
    let v1 = h.level_one_vertices();
    let (h1, map1) = induced(h, &v1)?;
    let isolated: Vec<usize> = isolated_vertices(&h1).into_iter().map(|v| map1[v - 1]).collect();
    let reduction = if isolated.len() == v1.len() {
        Reduction::UnitValue
    } else {
        let keep: Vec<usize> = v1.into_iter().filter(|v| !isolated.contains(v)).collect();
        let (graph, map) = induced(h, &keep)?;
        Reduction::Graph { graph, map }
    };
    Ok(ReductionReport { reduction, budget, hypothesis_ok: budget <= 1.0 + 1e-12 })
}

/// Lemma window: `Σ C(t, r) <= m <= Σ C(t, r) + Σ C(t-1, r-1)`.
pub fn lemma34_range(types: &EdgeTypeSet, t: usize) -> (u64, u64) {
    let lo = count_within(types, t);
    let extra: u64 = types.iter().map(|r| binomial(t.saturating_sub(1), r - 1)).sum();
    (lo, lo + extra)
}

/// Whether `L(C_{m,T}) = L([t]^T)` is asserted for this `(t, m)`; errors
/// outside the window or when `1 ∈ T`.
pub fn colex_range_equal(types: &EdgeTypeSet, t: usize, m: usize) -> Result<bool> {
    if types.contains(1) {
        return Err(Error::InvalidArgument("level 1 is not allowed here".into()));
    }
    let (lo, hi) = lemma34_range(types, t);
    if (m as u64) < lo || (m as u64) > hi {
        return Err(Error::Hypothesis(format!("m = {m} outside [{lo}, {hi}] for t = {t}")));
    }
    Ok(true)
}

/// Predicted `L(C_{m,T})` inside the window: `L([t]^T)`.
pub fn lemma34_predicted(types: &EdgeTypeSet, alpha: &AlphaParams, t: usize, m: usize) -> Result<f64> {
    colex_range_equal(types, t, m)?;
    complete_uniform_value(types, alpha, t)
}

/// `(lo, hi)` with `lo < m <= hi` the window for the level-1 connection.
pub fn connection_range(types: &EdgeTypeSet, t: usize) -> (u64, u64) {
    let q: Vec<usize> = types.iter().filter(|&r| r != 1).collect();
    let lo = t as u64 + q.iter().map(|&r| binomial(t, r)).sum::<u64>();
    let hi = t as u64 + 1 + q.iter().map(|&r| binomial(t + 1, r)).sum::<u64>();
    (lo, hi)
}

/// The unique `t >= 0` whose connection window contains `m`.
pub fn connection_t(types: &EdgeTypeSet, m: usize) -> usize {
    let m = m as u64;
    (0..).find(|&t| connection_range(types, t).1 >= m).expect("windows cover every m")
}

fn connection_value_unchecked(types: &EdgeTypeSet, alpha: &AlphaParams, m: usize, t: usize, cfg: &SolverConfig) -> Result<f64> {
    let q = types
        .without(1)
        .ok_or_else(|| Error::InvalidArgument("type set needs a level above 1".into()))?;
    let k = m
        .checked_sub(t + 1)
        .ok_or_else(|| Error::Hypothesis(format!("m = {m} is below t + 1 = {}", t + 1)))?;
    if k == 0 {
        return Ok(1.0);
    }
    let g = colex_first_m(&q, k)?;
    // inside the colex window the value has a closed form
    let window = (1..=g.n()).find(|&s| {
        let (lo, hi) = lemma34_range(&q, s);
        lo <= k as u64 && k as u64 <= hi
    });
    let rest = match window {
        Some(s) => complete_uniform_value(&q, alpha, s)?,
        None => optimize(&g, alpha, cfg)?.value,
    };
    Ok(1.0 + rest)
}

/// `1 + L(C_{m-t-1, T \ {1}})`, the predicted `L(C_{m,T})` for `1 ∈ T`,
/// coefficients aligned by cardinality. Errors when the coefficient budget
/// or the window `t + Σ C(t,r) < m <= t + 1 + Σ C(t+1,r)` fails.
pub fn connection_compose(types: &EdgeTypeSet, alpha: &AlphaParams, m: usize, t: usize, cfg: &SolverConfig) -> Result<f64> {
    if !types.contains(1) {
        return Err(Error::InvalidArgument("type set must contain 1".into()));
    }
    let budget = alpha.factorial_budget(types);
    if budget > 1.0 + 1e-12 {
        return Err(Error::Hypothesis(format!("sum of alpha_r/(r-1)! = {budget} exceeds 1")));
    }
    let (lo, hi) = connection_range(types, t);
    if t == 0 || (m as u64) <= lo || (m as u64) > hi {
        return Err(Error::Hypothesis(format!("need {lo} < m <= {hi} with t >= 1, got m = {m}, t = {t}")));
    }
    connection_value_unchecked(types, alpha, m, t, cfg)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TheoremId {
    /// Motzkin–Straus for graphs.
    Ms,
    /// `{1,2}`-graphs.
    Th2,
    /// `{1,r}`-graphs.
    Th1r,
    /// `{1,2,3}`-graphs.
    Th123,
    /// Isolated level-1 vertex reduction.
    T12,
    /// Colex window equality.
    Lemma34,
    /// Level-1 connection for colex graphs.
    Connection,
}

impl TheoremId {
    pub const ALL: [TheoremId; 7] = [
        TheoremId::Ms,
        TheoremId::Th2,
        TheoremId::Th1r,
        TheoremId::Th123,
        TheoremId::T12,
        TheoremId::Lemma34,
        TheoremId::Connection,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            TheoremId::Ms => "ms",
            TheoremId::Th2 => "th2",
            TheoremId::Th1r => "th1r",
            TheoremId::Th123 => "th123",
            TheoremId::T12 => "t12",
            TheoremId::Lemma34 => "lemma34",
            TheoremId::Connection => "connection",
        }
    }
}

impl FromStr for TheoremId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        TheoremId::ALL
            .into_iter()
            .find(|id| id.as_str() == s)
            .ok_or_else(|| Error::UnknownId(s.to_string()))
    }
}

impl fmt::Display for TheoremId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Input to [`verify_theorem`]. Missing pieces fall back to the complete
/// graph (or colex graph) the theorem is about.
#[derive(Clone, Debug, Default)]
pub struct TheoremInstance {
    pub graph: Option<Hypergraph>,
    /// `(level, coefficient)` pairs; the base level is implied.
    pub alpha: Vec<(usize, f64)>,
    pub types: Option<EdgeTypeSet>,
    pub t: Option<usize>,
    pub r: Option<usize>,
    pub m: Option<usize>,
}

impl TheoremInstance {
    fn coefficient(&self, r: usize, default: f64) -> f64 {
        self.alpha.iter().rev().find(|(l, _)| *l == r).map(|&(_, a)| a).unwrap_or(default)
    }

    fn need_t(&self) -> Result<usize> {
        self.t.ok_or_else(|| Error::InvalidArgument("parameter t is required".into()))
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct VerifyConfig {
    pub solver: SolverConfig,
    /// Agreement tolerance between prediction and computation.
    pub tol: f64,
    /// Cross-check with the exact oracle up to this many vertices.
    pub oracle_max_n: usize,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig { solver: SolverConfig::default(), tol: 1e-7, oracle_max_n: 8 }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TheoremVerdict {
    pub theorem_id: String,
    pub hypothesis_ok: bool,
    pub predicted: f64,
    pub computed: f64,
    pub abs_error: f64,
    pub witness: Optimum,
    pub oracle_value: Option<f64>,
    pub passed: bool,
    pub notes: Vec<String>,
}

/// Solver value, cross-checked by the oracle on small graphs.
pub(crate) struct Computed {
    pub value: f64,
    pub witness: Optimum,
    pub oracle_value: Option<f64>,
    pub agree: bool,
}

pub(crate) fn compute_value(h: &Hypergraph, alpha: &AlphaParams, cfg: &VerifyConfig) -> Result<Computed> {
    let opt = optimize(h, alpha, &cfg.solver)?;
    if h.n() > cfg.oracle_max_n || h.n() == 0 {
        return Ok(Computed { value: opt.value, witness: opt, oracle_value: None, agree: true });
    }
    let oracle = exact_oracle(h, alpha)?;
    let agree = (oracle.value - opt.value).abs() <= cfg.tol;
    let oracle_value = Some(oracle.value);
    if oracle.value > opt.value {
        Ok(Computed { value: oracle.value, witness: oracle, oracle_value, agree })
    } else {
        Ok(Computed { value: opt.value, witness: opt, oracle_value, agree })
    }
}

fn verdict(id: TheoremId, hypothesis_ok: bool, predicted: f64, c: Computed, tol: f64, mut notes: Vec<String>) -> TheoremVerdict {
    let abs_error = (predicted - c.value).abs();
    if !c.agree {
        notes.push(format!("solver and oracle disagree: oracle {:?}", c.oracle_value));
    }
    if !hypothesis_ok {
        notes.push("hypothesis not satisfied; prediction is informational".into());
    }
    TheoremVerdict {
        theorem_id: id.to_string(),
        hypothesis_ok,
        predicted,
        computed: c.value,
        abs_error,
        witness: c.witness,
        oracle_value: c.oracle_value,
        passed: hypothesis_ok && c.agree && abs_error <= tol,
        notes,
    }
}

fn section2_example() -> Hypergraph {
    Hypergraph::from_lists(6, &[&[1][..], &[2], &[3], &[4], &[5], &[1, 2], &[1, 3], &[1, 2, 3], &[3, 5, 6]])
        .expect("valid example")
}

/// Computes the closed-form prediction and the numerical value for one
/// theorem on one instance.
pub fn verify_theorem(id: TheoremId, inst: &TheoremInstance, cfg: &VerifyConfig) -> Result<TheoremVerdict> {
    let mut notes = Vec::new();
    match id {
        TheoremId::Ms => {
            let h = match &inst.graph {
                Some(h) => h.clone(),
                None => {
                    let t = inst.need_t()?;
                    if t >= 2 {
                        complete(&EdgeTypeSet::single(2)?, t)?
                    } else {
                        Hypergraph::empty(t.max(1))?
                    }
                }
            };
            let types_ok = h.edge_types().is_none_or(|t| t.as_slice() == [2]);
            let t = if h.is_empty() { 1 } else { max_clique_order(&h, &EdgeTypeSet::single(2)?)? };
            let alpha = AlphaParams::new(2, [])?;
            let c = compute_value(&h, &alpha, cfg)?;
            notes.push(format!("clique order t = {t}"));
            Ok(verdict(id, types_ok, ms_value(t)?, c, cfg.tol, notes))
        }
        TheoremId::Th2 => {
            let t12 = EdgeTypeSet::new(vec![1, 2])?;
            let h = match &inst.graph {
                Some(h) => h.clone(),
                None => complete(&t12, inst.need_t()?.max(2))?,
            };
            let a2 = inst.coefficient(2, 1.0);
            let alpha = AlphaParams::new(1, [(2, a2)])?;
            let types_ok = h.edge_types().as_ref() == Some(&t12);
            let t = if types_ok { max_clique_order(&h, &t12)? } else { inst.t.unwrap_or(1) };
            let t = if inst.graph.is_none() { inst.need_t()? } else { t };
            notes.push(format!("clique order t = {t}"));
            let ok = types_ok && th2_hypothesis(a2, t);
            let c = compute_value(&h, &alpha, cfg)?;
            Ok(verdict(id, ok, th2_value(a2, t)?, c, cfg.tol, notes))
        }
        TheoremId::Th1r => {
            let r = inst
                .r
                .or_else(|| inst.graph.as_ref().and_then(|h| h.edge_types()).map(|t| t.max()))
                .ok_or_else(|| Error::InvalidArgument("parameter r is required".into()))?;
            let types = EdgeTypeSet::new(vec![1, r])?;
            let h = match &inst.graph {
                Some(h) => h.clone(),
                None => complete(&types, inst.need_t()?.max(r))?,
            };
            let ar = inst.coefficient(r, 1.0);
            let alpha = AlphaParams::new(1, [(r, ar)])?;
            let types_ok = h.edge_types().as_ref() == Some(&types);
            let (t, t1) = if inst.graph.is_none() {
                let t = inst.need_t()?;
                (t, t)
            } else if types_ok {
                (max_clique_order(&h, &types)?, max_clique_order(&h, &EdgeTypeSet::single(1)?)?)
            } else {
                (inst.t.unwrap_or(1), 0)
            };
            notes.push(format!("clique orders: {{1,{r}}} = {t}, {{1}} = {t1}"));
            let threshold = th1r_threshold(ar, r)?;
            if r >= 3 && ar <= factorial(r - 2) {
                notes.push(format!("alpha_{r} <= (r-2)!: every clique order qualifies"));
            }
            let ok = types_ok && t == t1 && t >= threshold;
            let c = compute_value(&h, &alpha, cfg)?;
            Ok(verdict(id, ok, th1r_value(ar, r, t)?, c, cfg.tol, notes))
        }
        TheoremId::Th123 => {
            let types = EdgeTypeSet::new(vec![1, 2, 3])?;
            let h = match &inst.graph {
                Some(h) => h.clone(),
                None => complete(&types, inst.need_t()?.max(3))?,
            };
            let (a2, a3) = (inst.coefficient(2, 1.0), inst.coefficient(3, 1.0));
            let alpha = AlphaParams::new(1, [(2, a2), (3, a3)])?;
            let types_ok = h.edge_types().as_ref() == Some(&types);
            let (t, t1) = if inst.graph.is_none() {
                let t = inst.need_t()?;
                (t, t)
            } else if types_ok {
                (max_clique_order(&h, &types)?, max_clique_order(&h, &EdgeTypeSet::single(1)?)?)
            } else {
                (inst.t.unwrap_or(1), 0)
            };
            notes.push(format!("clique orders: {{1,2,3}} = {t}, {{1}} = {t1}"));
            let ok = types_ok && t == t1 && th123_hypothesis(a2, a3, t).unwrap_or(false);
            let c = compute_value(&h, &alpha, cfg)?;
            Ok(verdict(id, ok, th123_value(a2, a3, t)?, c, cfg.tol, notes))
        }
        TheoremId::T12 => {
            let h = inst.graph.clone().unwrap_or_else(section2_example);
            let alpha = AlphaParams::new(1, inst.alpha.iter().copied().filter(|&(r, _)| r != 1))?;
            let report = reduce_level1(&h, &alpha)?;
            let predicted = match &report.reduction {
                Reduction::UnitValue => {
                    notes.push("every level-1 vertex is isolated".into());
                    1.0
                }
                Reduction::Graph { graph, map } => {
                    notes.push(format!("reduced to vertices {map:?}"));
                    compute_value(graph, &alpha, cfg)?.value
                }
            };
            notes.push(format!("coefficient budget {}", report.budget));
            let c = compute_value(&h, &alpha, cfg)?;
            Ok(verdict(id, report.hypothesis_ok, predicted, c, cfg.tol, notes))
        }
        TheoremId::Lemma34 => {
            let types = inst.types.clone().unwrap_or(EdgeTypeSet::single(3)?);
            let t = inst.need_t()?;
            let (lo, hi) = lemma34_range(&types, t);
            let m = inst.m.unwrap_or(lo as usize);
            let alpha = AlphaParams::for_types(&types, inst.alpha.iter().copied().filter(|&(r, _)| r != types.min()))?;
            let ok = colex_range_equal(&types, t, m).is_ok();
            notes.push(format!("window [{lo}, {hi}]"));
            let predicted = complete_uniform_value(&types, &alpha, t)?;
            let h = colex_first_m(&types, m)?;
            let c = compute_value(&h, &alpha, cfg)?;
            Ok(verdict(id, ok, predicted, c, cfg.tol, notes))
        }
        TheoremId::Connection => {
            let types = inst.types.clone().unwrap_or(EdgeTypeSet::new(vec![1, 3])?);
            let m = inst.m.ok_or_else(|| Error::InvalidArgument("parameter m is required".into()))?;
            let t = inst.t.unwrap_or_else(|| connection_t(&types, m));
            let alpha = AlphaParams::new(1, inst.alpha.iter().copied().filter(|&(r, _)| r != 1))?;
            let (predicted, ok) = match connection_compose(&types, &alpha, m, t, &cfg.solver) {
                Ok(v) => (v, true),
                Err(Error::Hypothesis(msg)) => {
                    notes.push(msg);
                    (connection_value_unchecked(&types, &alpha, m, t, &cfg.solver).unwrap_or(f64::NAN), false)
                }
                Err(e) => return Err(e),
            };
            let h = colex_first_m(&types, m)?;
            let c = compute_value(&h, &alpha, cfg)?;
            Ok(verdict(id, ok, predicted, c, cfg.tol, notes))
        }
    }
}
