//! Multi-start projected-gradient ascent with a support-restricted Newton
//! polish.

use std::cmp::Ordering;

use nalgebra::{DMatrix, DVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::clique::maximal_cliques;
use crate::error::{Error, Result};
use crate::hypergraph::{Edge, Hypergraph};

use super::eval::Polynomial;
use super::simplex::{project_on_face, project_vec};
use super::{AlphaParams, Weighting};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SolverConfig {
    /// Stop when the projected-gradient step `‖P(x + ∇L) - x‖∞` is below this.
    pub tol: f64,
    pub max_iters: usize,
    /// Number of random Dirichlet(1) starts.
    pub starts: usize,
    pub seed: u64,
    /// Weights above this count as support.
    pub support_threshold: f64,
    /// Values closer than this are ties.
    pub value_tol: f64,
    /// Cap on clique characteristic vectors used as warm starts.
    pub clique_starts: usize,
    /// Run starts on the rayon pool.
    pub parallel: bool,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig {
            tol: 1e-10,
            max_iters: 5000,
            starts: 12,
            seed: 0,
            support_threshold: 1e-9,
            value_tol: 1e-9,
            clique_starts: 16,
            parallel: true,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Optimum {
    pub value: f64,
    pub weighting: Weighting,
    /// 1-based support `σ(x)`.
    pub support: Vec<usize>,
    pub kkt_residual: f64,
    pub starts_used: usize,
    pub converged: bool,
}

#[derive(Clone, Debug)]
pub(crate) struct Run {
    pub x: Vec<f64>,
    pub value: f64,
    pub converged: bool,
}

pub(crate) fn full_face(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

fn project(v: &[f64], face: u64) -> Vec<f64> {
    if face == full_face(v.len()) {
        project_vec(v)
    } else {
        project_on_face(v, face)
    }
}

/// `‖P(x + g) - x‖∞` restricted to `face`.
pub(crate) fn stationarity(poly: &Polynomial, x: &[f64], face: u64) -> f64 {
    let g = poly.gradient(x);
    let moved: Vec<f64> = x.iter().zip(&g).map(|(a, b)| a + b).collect();
    let p = project(&moved, face);
    p.iter().zip(x).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max)
}

/// Newton iteration on `∂L/∂x_i = μ (i ∈ S)`, `Σ x_i = 1`, where `S` is the
/// set of coordinates above `threshold`. Returns a nonnegative point.
pub(crate) fn polish(poly: &Polynomial, x: &[f64], threshold: f64) -> Option<Vec<f64>> {
    let n = x.len();
    let s: Vec<usize> = (0..n).filter(|&i| x[i] > threshold).collect();
    let k = s.len();
    if k == 0 {
        return None;
    }
    let total: f64 = s.iter().map(|&i| x[i]).sum();
    let mut z = vec![0.0; n];
    for &i in &s {
        z[i] = x[i] / total;
    }
    if k == 1 {
        return Some(z);
    }
    let mut g = vec![0.0; n];
    poly.gradient_into(&z, &mut g);
    let mut mu: f64 = s.iter().map(|&i| z[i] * g[i]).sum();

    let residual = |z: &[f64], g: &[f64], mu: f64| -> DVector<f64> {
        let mut f = DVector::zeros(k + 1);
        for (a, &i) in s.iter().enumerate() {
            f[a] = g[i] - mu;
        }
        f[k] = s.iter().map(|&i| z[i]).sum::<f64>() - 1.0;
        f
    };

    let mut f = residual(&z, &g, mu);
    for _ in 0..60 {
        let norm = f.norm();
        if norm <= 1e-15 * (1.0 + mu.abs()) {
            break;
        }
        let hess = poly.hessian(&z);
        let mut jac = DMatrix::zeros(k + 1, k + 1);
        for (a, &i) in s.iter().enumerate() {
            for (b, &j) in s.iter().enumerate() {
                jac[(a, b)] = hess[i * n + j];
            }
            jac[(a, k)] = -1.0;
            jac[(k, a)] = 1.0;
        }
        let svd = jac.svd(true, true);
        let smax = svd.singular_values.max();
        let Ok(step) = svd.solve(&(-&f), smax * 1e-13) else {
            break;
        };
        let mut t = 1.0;
        let mut accepted = false;
        for _ in 0..50 {
            let mut trial = z.clone();
            let mut feasible = true;
            for (a, &i) in s.iter().enumerate() {
                trial[i] = z[i] + t * step[a];
                if trial[i] < 0.0 {
                    feasible = false;
                }
            }
            if feasible {
                let tmu = mu + t * step[k];
                poly.gradient_into(&trial, &mut g);
                let tf = residual(&trial, &g, tmu);
                if tf.norm() < norm {
                    z = trial;
                    mu = tmu;
                    f = tf;
                    accepted = true;
                    break;
                }
            }
            t *= 0.5;
        }
        if !accepted {
            break;
        }
    }
    let total: f64 = z.iter().sum();
    z.iter_mut().for_each(|v| *v /= total);
    Some(z)
}

/// Projected-gradient ascent restricted to `face`, with periodic Newton
/// polishing once the support has settled.
pub(crate) fn ascend(poly: &Polynomial, x0: &[f64], face: u64, cfg: &SolverConfig) -> Run {
    let n = x0.len();
    let mut x = project(x0, face);
    let mut f = poly.value(&x);
    let mut g = vec![0.0; n];
    let mut step: f64 = 1.0;
    let mut converged = false;
    let mut last_support = u64::MAX;

    let try_polish = |x: &[f64], f: f64| -> Option<(Vec<f64>, f64)> {
        let y = polish(poly, x, cfg.support_threshold)?;
        let fy = poly.value(&y);
        (fy >= f - 1e-13).then_some((y, fy))
    };

    for it in 0..cfg.max_iters {
        poly.gradient_into(&x, &mut g);
        let moved: Vec<f64> = x.iter().zip(&g).map(|(a, b)| a + b).collect();
        let p = project(&moved, face);
        let res = p.iter().zip(&x).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
        if res <= cfg.tol {
            converged = true;
            break;
        }
        let support = x
            .iter()
            .enumerate()
            .filter(|(_, &v)| v > cfg.support_threshold)
            .fold(0u64, |m, (i, _)| m | 1 << i);
        if support == last_support && it % 8 == 0 {
            if let Some((y, fy)) = try_polish(&x, f) {
                x = y;
                f = fy;
                if stationarity(poly, &x, face) <= cfg.tol {
                    converged = true;
                    break;
                }
                continue;
            }
        }
        last_support = support;

        let mut s = (step * 2.0).min(1e8);
        let mut next = None;
        while s > 1e-18 {
            let moved: Vec<f64> = x.iter().zip(&g).map(|(a, b)| a + s * b).collect();
            let trial = project(&moved, face);
            let lin: f64 = g.iter().zip(trial.iter().zip(&x)).map(|(gi, (t, xi))| gi * (t - xi)).sum();
            if lin <= 0.0 {
                break;
            }
            let ft = poly.value(&trial);
            if ft >= f + 1e-4 * lin {
                next = Some((trial, ft));
                break;
            }
            s *= 0.5;
        }
        match next {
            Some((trial, ft)) => {
                x = trial;
                f = ft;
                step = s;
            }
            None => break,
        }
    }
    if !converged {
        if let Some((y, fy)) = try_polish(&x, f) {
            x = y;
            f = fy;
        }
        converged = stationarity(poly, &x, face) <= cfg.tol;
    }
    Run { x, value: f, converged }
}

fn support_size(x: &[f64], threshold: f64) -> usize {
    x.iter().filter(|&&v| v > threshold).count()
}

/// Ordering used to pick among runs: larger value, then smaller support,
/// then lexicographically larger weighting.
pub(crate) fn prefer(a: &Run, b: &Run, cfg: &SolverConfig) -> Ordering {
    if a.value > b.value + cfg.value_tol {
        return Ordering::Greater;
    }
    if b.value > a.value + cfg.value_tol {
        return Ordering::Less;
    }
    let (sa, sb) = (support_size(&a.x, cfg.support_threshold), support_size(&b.x, cfg.support_threshold));
    if sa != sb {
        return sb.cmp(&sa);
    }
    for (p, q) in a.x.iter().zip(&b.x) {
        match p.total_cmp(q) {
            Ordering::Equal => continue,
            other => return other,
        }
    }
    a.value.total_cmp(&b.value)
}

pub(crate) fn best_run(runs: Vec<Run>, cfg: &SolverConfig) -> Option<Run> {
    runs.into_iter().reduce(|best, r| if prefer(&r, &best, cfg) == Ordering::Greater { r } else { best })
}

pub(crate) fn finish(poly: &Polynomial, x: Vec<f64>, starts_used: usize, converged: bool, cfg: &SolverConfig) -> Optimum {
    let g = poly.gradient(&x);
    let weighting = Weighting::from_raw(x);
    let support = weighting.support(cfg.support_threshold);
    let on_support = support.iter().map(|&v| g[v - 1]);
    let hi = on_support.clone().fold(f64::NEG_INFINITY, f64::max);
    let lo = on_support.fold(f64::INFINITY, f64::min);
    let kkt_residual = if support.len() > 1 { hi - lo } else { 0.0 };
    Optimum {
        value: poly.value(weighting.as_slice()),
        weighting,
        support,
        kkt_residual,
        starts_used,
        converged,
    }
}

fn dirichlet(rng: &mut ChaCha8Rng, n: usize) -> Vec<f64> {
    let raw: Vec<f64> = (0..n).map(|_| -(1.0 - rng.gen::<f64>()).ln()).collect();
    let s: f64 = raw.iter().sum();
    raw.into_iter().map(|v| v / s).collect()
}

fn starting_points(h: &Hypergraph, cfg: &SolverConfig) -> Vec<Vec<f64>> {
    let n = h.n();
    let mut starts = vec![vec![1.0 / n as f64; n]];
    let indicator = |w: Edge| {
        let k = w.len() as f64;
        let mut x = vec![0.0; n];
        for v in w.vertices() {
            x[v - 1] = 1.0 / k;
        }
        x
    };
    if let Some(types) = h.edge_types() {
        let mut families = vec![types.clone()];
        if types.contains(1) {
            if let Some(rest) = types.without(1) {
                families.push(rest);
            }
        }
        for q in &families {
            for w in maximal_cliques(h, q, cfg.clique_starts) {
                let x = indicator(w);
                if !starts.contains(&x) {
                    starts.push(x);
                }
            }
        }
        for e in h.level(1) {
            starts.push(indicator(*e));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    for _ in 0..cfg.starts {
        starts.push(dirichlet(&mut rng, n));
    }
    starts
}

pub(crate) fn run_all(poly: &Polynomial, starts: &[Vec<f64>], face: u64, cfg: &SolverConfig) -> Vec<Run> {
    if cfg.parallel {
        starts.par_iter().map(|x0| ascend(poly, x0, face, cfg)).collect()
    } else {
        starts.iter().map(|x0| ascend(poly, x0, face, cfg)).collect()
    }
}

/// Maximizes `L_α(H, x)` over the simplex.
///
/// Starts from the barycenter, characteristic vectors of maximal cliques,
/// level-1 vertices and seeded Dirichlet draws; each start is ascended and
/// polished independently and the best result is kept.
pub fn optimize(h: &Hypergraph, alpha: &AlphaParams, cfg: &SolverConfig) -> Result<Optimum> {
    let n = h.n();
    if n == 0 {
        return Err(Error::InvalidArgument("cannot optimize over an empty vertex set".into()));
    }
    let poly = Polynomial::new(h, alpha)?;
    if poly.is_zero() {
        let mut x = vec![0.0; n];
        x[0] = 1.0;
        return Ok(finish(&poly, x, 0, true, cfg));
    }
    let starts = starting_points(h, cfg);
    let runs = run_all(&poly, &starts, full_face(n), cfg);
    let best = best_run(runs, cfg).expect("at least one start");
    Ok(finish(&poly, best.x, starts.len(), best.converged, cfg))
}

/// Looks for an optimum of the same value on a strictly smaller support by
/// merging support pairs that share no edge (`y_i = x_i + x_j`, `y_j = 0`)
/// and re-polishing, until every support pair is covered by an edge.
pub fn support_minimize(h: &Hypergraph, alpha: &AlphaParams, opt: &Optimum, cfg: &SolverConfig) -> Result<Optimum> {
    let poly = Polynomial::new(h, alpha)?;
    if opt.weighting.len() != h.n() {
        return Err(Error::DimensionMismatch { expected: h.n(), got: opt.weighting.len() });
    }
    let covered = poly.covered_pairs();
    let target = opt.value;
    let mut x = opt.weighting.as_slice().to_vec();
    let mut converged = opt.converged;
    'outer: loop {
        let support: Vec<usize> = (0..x.len()).filter(|&i| x[i] > cfg.support_threshold).collect();
        let uncovered: Vec<(usize, usize)> = support
            .iter()
            .enumerate()
            .flat_map(|(a, &i)| support[a + 1..].iter().map(move |&j| (i, j)))
            .filter(|&(i, j)| covered[i] >> j & 1 == 0)
            .collect();
        if uncovered.is_empty() {
            break;
        }
        for (i, j) in uncovered {
            for (keep, drop) in [(i, j), (j, i)] {
                let mut y = x.clone();
                y[keep] += y[drop];
                y[drop] = 0.0;
                let candidate = match polish(&poly, &y, cfg.support_threshold) {
                    Some(z) if poly.value(&z) >= poly.value(&y) => z,
                    _ => y,
                };
                if poly.value(&candidate) >= target - cfg.value_tol {
                    converged = stationarity(&poly, &candidate, full_face(x.len())) <= cfg.tol;
                    x = candidate;
                    continue 'outer;
                }
            }
        }
        break;
    }
    Ok(finish(&poly, x, opt.starts_used, converged, cfg))
}
