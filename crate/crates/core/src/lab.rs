//! Desk-scale scans of the colex conjecture over left-compressed families.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::colex::{binomial, colex_first_m};
use crate::compress::lower_covers;
use crate::error::{Error, Result};
use crate::format;
use crate::hypergraph::{k_subsets, Edge, EdgeTypeSet, Hypergraph};
use crate::lagrangian::{AlphaParams, SolverConfig};
use crate::theorems::{
    compute_value, connection_range, connection_t, TheoremId, TheoremVerdict, VerifyConfig,
};

/// Cap on stored dominance ideals across all levels of one enumeration.
pub const MAX_IDEALS: usize = 2_000_000;

/// Dominance ideals of `[n]^{(r)}` with between 1 and `max_size` members,
/// grouped by size. Members are listed in colex order. The flag reports
/// whether [`MAX_IDEALS`] cut the generation short.
fn level_ideals(n: usize, r: usize, max_size: usize, budget: &mut usize) -> (Vec<Vec<Vec<Edge>>>, bool) {
    let sets: Vec<Edge> = k_subsets(n, r).collect();
    let index = |e: Edge| sets.binary_search(&e).expect("lower cover of an r-subset of [n]");
    let covers: Vec<Vec<usize>> = sets.iter().map(|&e| lower_covers(e).map(index).collect()).collect();
    let max_size = max_size.min(sets.len());
    let mut by_size: Vec<Vec<Vec<Edge>>> = vec![Vec::new(); max_size + 1];
    let mut member = vec![false; sets.len()];
    let mut cur: Vec<usize> = Vec::new();
    let mut truncated = false;

    // every prefix (in colex order) of an ideal is an ideal, so growing by
    // colex-increasing members produces each ideal once
    #[allow(clippy::too_many_arguments)]
    fn grow(
        start: usize,
        sets: &[Edge],
        covers: &[Vec<usize>],
        max_size: usize,
        member: &mut [bool],
        cur: &mut Vec<usize>,
        by_size: &mut [Vec<Vec<Edge>>],
        budget: &mut usize,
        truncated: &mut bool,
    ) {
        for k in start..sets.len() {
            if *truncated {
                return;
            }
            if !covers[k].iter().all(|&c| member[c]) {
                continue;
            }
            if *budget == 0 {
                *truncated = true;
                return;
            }
            *budget -= 1;
            member[k] = true;
            cur.push(k);
            by_size[cur.len()].push(cur.iter().map(|&i| sets[i]).collect());
            if cur.len() < max_size {
                grow(k + 1, sets, covers, max_size, member, cur, by_size, budget, truncated);
            }
            cur.pop();
            member[k] = false;
        }
    }

    if max_size > 0 {
        grow(0, &sets, &covers, max_size, &mut member, &mut cur, &mut by_size, budget, &mut truncated);
    }
    (by_size, truncated)
}

/// Stream of left-compressed hypergraphs of type exactly `T` with `m`
/// edges on the vertex set `[n]`.
pub struct LeftCompressed {
    n: usize,
    /// Ideals per level, indexed by size.
    levels: Vec<Vec<Vec<Vec<Edge>>>>,
    /// Size splits across levels, each part at least 1.
    splits: Vec<Vec<usize>>,
    split: usize,
    odometer: Vec<usize>,
    truncated: bool,
}

impl LeftCompressed {
    /// True when the ideal budget ran out and some graphs are missing.
    pub fn is_truncated(&self) -> bool {
        self.truncated
    }

    fn advance_split(&mut self) {
        while self.split < self.splits.len() {
            let sizes = &self.splits[self.split];
            if sizes.iter().enumerate().all(|(l, &s)| !self.levels[l][s].is_empty()) {
                self.odometer = vec![0; sizes.len()];
                return;
            }
            self.split += 1;
        }
    }
}

impl Iterator for LeftCompressed {
    type Item = Hypergraph;

    fn next(&mut self) -> Option<Hypergraph> {
        if self.split >= self.splits.len() {
            return None;
        }
        let sizes = self.splits[self.split].clone();
        let edges: Vec<Edge> = sizes
            .iter()
            .enumerate()
            .flat_map(|(l, &s)| self.levels[l][s][self.odometer[l]].iter().copied())
            .collect();
        let graph = Hypergraph::new(self.n, edges).expect("ideals hold distinct edges of [n]");

        let mut l = 0;
        loop {
            if l == sizes.len() {
                self.split += 1;
                self.advance_split();
                break;
            }
            self.odometer[l] += 1;
            if self.odometer[l] < self.levels[l][sizes[l]].len() {
                break;
            }
            self.odometer[l] = 0;
            l += 1;
        }
        Some(graph)
    }
}

fn splits(total: usize, caps: &[usize]) -> Vec<Vec<usize>> {
    fn rec(left: usize, caps: &[usize], cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        let l = cur.len();
        if l == caps.len() {
            if left == 0 {
                out.push(cur.clone());
            }
            return;
        }
        let rest = caps.len() - l - 1;
        for s in 1..=caps[l].min(left.saturating_sub(rest)) {
            cur.push(s);
            rec(left - s, caps, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(total, caps, &mut Vec::new(), &mut out);
    out
}

/// Every left-compressed hypergraph of type exactly `T` with `m` edges on
/// at most `n` vertices, each once. Empty when infeasible.
pub fn enumerate_left_compressed(types: &EdgeTypeSet, m: usize, n: usize) -> LeftCompressed {
    let feasible = m >= types.len() && n >= types.max() && n <= crate::hypergraph::MAX_VERTICES;
    let mut budget = MAX_IDEALS;
    let mut truncated = false;
    let mut levels = Vec::new();
    let mut caps = Vec::new();
    if feasible {
        let max_size = m + 1 - types.len();
        for r in types.iter() {
            let (ideals, cut) = level_ideals(n, r, max_size, &mut budget);
            truncated |= cut;
            caps.push(ideals.len() - 1);
            levels.push(ideals);
        }
    }
    let splits = if feasible { splits(m, &caps) } else { Vec::new() };
    let mut it = LeftCompressed { n, levels, splits, split: 0, odometer: Vec::new(), truncated };
    it.advance_split();
    it
}

#[derive(Clone, Debug, PartialEq)]
pub struct ScanConfig {
    pub solver: SolverConfig,
    /// Stop after this many graphs and flag the report incomplete.
    pub max_enumerated: usize,
    /// Cross-check each value with the exact oracle up to this many vertices.
    pub oracle_max_n: usize,
    /// Slack for the conjecture test and for collecting witnesses.
    pub tol: f64,
    /// Keep at most this many witnesses.
    pub max_witnesses: usize,
}

impl Default for ScanConfig {
    fn default() -> Self {
        ScanConfig {
            solver: SolverConfig { parallel: false, ..SolverConfig::default() },
            max_enumerated: 1_000_000,
            oracle_max_n: 8,
            tol: 1e-7,
            max_witnesses: 16,
        }
    }
}

impl ScanConfig {
    fn verify_config(&self) -> VerifyConfig {
        VerifyConfig { solver: self.solver.clone(), tol: self.tol, oracle_max_n: self.oracle_max_n }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Witness {
    pub value: f64,
    /// The graph in the text format.
    pub graph: String,
}

/// Outcome of one scan. All claims are relative to the vertex bound `n`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ScanReport {
    pub types: EdgeTypeSet,
    pub alpha: AlphaParams,
    pub m: usize,
    pub n: usize,
    pub extremal_value: f64,
    pub colex_value: f64,
    pub conjecture_holds: bool,
    pub witnesses: Vec<Witness>,
    pub enumerated_count: usize,
    /// False when the enumeration guard cut the scan short.
    pub complete: bool,
    /// Graphs on which solver and oracle differ by more than the tolerance.
    pub oracle_disagreements: usize,
}

const BATCH: usize = 512;

/// Maximizes over all left-compressed `T`-graphs with `m` edges on `[n]` and
/// compares against the colex graph.
pub fn scan(types: &EdgeTypeSet, alpha: &AlphaParams, m: usize, n: usize, cfg: &ScanConfig) -> Result<ScanReport> {
    if m == 0 {
        return Err(Error::InvalidArgument("m must be at least 1".into()));
    }
    for r in types.iter() {
        alpha.coefficient(r).ok_or(Error::MissingAlpha(r))?;
    }
    let vcfg = cfg.verify_config();
    let colex = colex_first_m(types, m)?;
    let colex_value = compute_value(&colex, alpha, &vcfg)?.value;

    let mut stream = enumerate_left_compressed(types, m, n);
    let mut enumerated_count = 0usize;
    let mut complete = true;
    let mut extremal = f64::NEG_INFINITY;
    let mut witnesses: Vec<(f64, Hypergraph)> = Vec::new();
    let mut oracle_disagreements = 0usize;
    loop {
        let room = cfg.max_enumerated - enumerated_count;
        let batch: Vec<Hypergraph> = stream.by_ref().take(BATCH.min(room)).collect();
        if batch.is_empty() {
            if room == 0 && stream.next().is_some() {
                complete = false;
            }
            break;
        }
        enumerated_count += batch.len();
        let values: Vec<(f64, bool)> = batch
            .par_iter()
            .map(|h| compute_value(h, alpha, &vcfg).map(|c| (c.value, c.agree)))
            .collect::<Result<_>>()?;
        for (h, (v, agree)) in batch.into_iter().zip(values) {
            if !agree {
                oracle_disagreements += 1;
            }
            if v > extremal + cfg.tol {
                extremal = v;
                witnesses.retain(|(w, _)| *w >= v - cfg.tol);
            } else {
                extremal = extremal.max(v);
            }
            if v >= extremal - cfg.tol && witnesses.len() < cfg.max_witnesses {
                witnesses.push((v, h));
            }
        }
    }
    complete &= !stream.is_truncated();
    let extremal_value = if enumerated_count == 0 { 0.0 } else { extremal };
    witnesses.retain(|(w, _)| *w >= extremal_value - cfg.tol);
    Ok(ScanReport {
        types: types.clone(),
        alpha: alpha.clone(),
        m,
        n,
        extremal_value,
        colex_value,
        conjecture_holds: extremal_value <= colex_value + cfg.tol,
        witnesses: witnesses.into_iter().map(|(value, h)| Witness { value, graph: format::write(&h) }).collect(),
        enumerated_count,
        complete,
        oracle_disagreements,
    })
}

/// Smallest `t` with `C(t, r) >= m`, plus one.
pub fn default_vertex_bound(r: usize, m: usize) -> usize {
    (r..).find(|&t| binomial(t, r) >= m as u64).expect("binomials grow") + 1
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RangeVariant {
    /// `C(t,3) - 2 <= m <= C(t,3) + C(t-1,2) - t`.
    Tal,
    /// `C(t,3) - 7 <= m <= C(t,3) + C(t-1,2) - t/2`.
    Tpzz,
    /// `C(t,r) - 4 <= m <= C(t,r)`, vertex bound `t`.
    Tpzz1,
}

impl FromStr for RangeVariant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "tal" => Ok(RangeVariant::Tal),
            "tpzz" => Ok(RangeVariant::Tpzz),
            "tpzz1" => Ok(RangeVariant::Tpzz1),
            other => Err(Error::UnknownId(other.to_string())),
        }
    }
}

impl fmt::Display for RangeVariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            RangeVariant::Tal => "tal",
            RangeVariant::Tpzz => "tpzz",
            RangeVariant::Tpzz1 => "tpzz1",
        })
    }
}

/// Closed interval of edge counts covered by the known cases of the colex
/// conjecture. Lower ends clamp to 1; the fractional upper end floors.
pub fn talbot_range(r: usize, t: usize, variant: RangeVariant) -> Result<(u64, u64)> {
    let uniform3 = matches!(variant, RangeVariant::Tal | RangeVariant::Tpzz);
    if (uniform3 && r != 3) || (!uniform3 && r < 3) {
        return Err(Error::InvalidArgument(format!("variant {variant} does not apply to r = {r}")));
    }
    if t < r {
        return Err(Error::InvalidArgument(format!("t = {t} is below r = {r}")));
    }
    let c = binomial(t, r) as i64;
    let t = t as i64;
    let (lo, hi) = match variant {
        RangeVariant::Tal => (c - 2, c + binomial(t as usize - 1, 2) as i64 - t),
        // floor(C(t-1,2) - t/2) computed in halves
        RangeVariant::Tpzz => (c - 7, (2 * c + 2 * binomial(t as usize - 1, 2) as i64 - t).div_euclid(2)),
        RangeVariant::Tpzz1 => (c - 4, c),
    };
    let lo = lo.max(1);
    if hi < lo {
        return Err(Error::InvalidArgument(format!("empty range for t = {t}")));
    }
    Ok((lo as u64, hi as u64))
}

/// Scans the level-1 connection: establishes the colex premise for
/// `T \ {1}` on `m - t - 1` edges, then scans `T`-graphs with `m` edges.
pub fn verify_connection(types: &EdgeTypeSet, alpha: &AlphaParams, m: usize, n: usize, cfg: &ScanConfig) -> Result<TheoremVerdict> {
    if !types.contains(1) {
        return Err(Error::InvalidArgument("type set must contain 1".into()));
    }
    let q = types
        .without(1)
        .ok_or_else(|| Error::InvalidArgument("type set needs a level above 1".into()))?;
    let mut notes = vec![format!("vertex bound n = {n}")];
    let t = connection_t(types, m);
    let (lo, hi) = connection_range(types, t);
    let budget = alpha.factorial_budget(types);
    let mut hypothesis_ok = t >= 1 && (m as u64) > lo && (m as u64) <= hi;
    if budget > 1.0 + 1e-12 {
        notes.push(format!("coefficient sum {budget} exceeds 1"));
        hypothesis_ok = false;
    }
    notes.push(format!("t = {t}, window {lo} < m <= {hi}"));

    let k = m.saturating_sub(t + 1);
    if k >= 1 {
        let premise = scan(&q, alpha, k, n, cfg)?;
        if !premise.conjecture_holds || !premise.complete {
            notes.push(format!(
                "premise on {k} edges failed: extremal {} vs colex {} (complete: {})",
                premise.extremal_value, premise.colex_value, premise.complete
            ));
            hypothesis_ok = false;
        } else {
            notes.push(format!("premise on {k} edges holds"));
        }
    }

    let main = scan(types, alpha, m, n, cfg)?;
    let colex = colex_first_m(types, m)?;
    let witness = compute_value(&colex, alpha, &cfg.verify_config())?.witness;
    if !main.complete {
        notes.push("main scan incomplete".into());
    }
    if main.oracle_disagreements > 0 {
        notes.push(format!("{} solver/oracle disagreements", main.oracle_disagreements));
    }
    let abs_error = (main.extremal_value - main.colex_value).max(0.0);
    Ok(TheoremVerdict {
        theorem_id: TheoremId::Connection.to_string(),
        hypothesis_ok,
        predicted: main.colex_value,
        computed: main.extremal_value,
        abs_error,
        witness,
        oracle_value: None,
        passed: hypothesis_ok && main.complete && main.conjecture_holds,
        notes,
    })
}
