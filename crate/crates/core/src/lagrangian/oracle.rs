//! Brute-force maximizer used as ground truth on small instances.
//!
//! Every candidate support `W` is treated separately: the maximum over the
//! face spanned by `W` is searched from several deterministic starts and,
//! for `|W| <= 4`, by a lattice scan refined twice around its best cell.
//! Supports containing a pair of vertices that share no edge are skipped:
//! moving the weight of one such vertex onto the other never lowers the
//! value at an optimum, so some optimum avoids them.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::hypergraph::Hypergraph;

use super::eval::Polynomial;
use super::solver::{ascend, best_run, finish, Run, SolverConfig};
use super::{AlphaParams, Optimum};

pub const ORACLE_MAX_N: usize = 12;

const LATTICE_MAX_SUPPORT: usize = 4;
const LATTICE_STEPS: usize = 32;

fn oracle_config() -> SolverConfig {
    SolverConfig { tol: 1e-12, max_iters: 4000, parallel: false, ..SolverConfig::default() }
}

/// Compositions of `total` into `parts` nonnegative integers.
fn compositions(total: usize, parts: usize, f: &mut impl FnMut(&[usize])) {
    fn rec(left: usize, parts: usize, cur: &mut Vec<usize>, f: &mut impl FnMut(&[usize])) {
        if cur.len() + 1 == parts {
            cur.push(left);
            f(cur);
            cur.pop();
            return;
        }
        for k in 0..=left {
            cur.push(k);
            rec(left - k, parts, cur, f);
            cur.pop();
        }
    }
    if parts > 0 {
        rec(total, parts, &mut Vec::with_capacity(parts), f);
    }
}

/// Best point of the lattice `{k/32}` on the face `w`, refined at steps
/// 1/128 and 1/512 in a window around the incumbent.
fn lattice_scan(poly: &Polynomial, w: &[usize]) -> Vec<f64> {
    let n = poly.n();
    let k = w.len();
    let embed = |coords: &[f64]| {
        let mut x = vec![0.0; n];
        for (a, &v) in w.iter().enumerate() {
            x[v] = coords[a];
        }
        x
    };
    let mut best = vec![1.0 / k as f64; k];
    let mut best_val = poly.value(&embed(&best));
    compositions(LATTICE_STEPS, k, &mut |c| {
        let coords: Vec<f64> = c.iter().map(|&q| q as f64 / LATTICE_STEPS as f64).collect();
        let v = poly.value(&embed(&coords));
        if v > best_val {
            best_val = v;
            best = coords;
        }
    });
    for step in [1.0 / 128.0, 1.0 / 512.0] {
        let center = best.clone();
        // offsets in -4..=4 steps on the first k-1 coordinates, last one absorbs
        let mut offsets = vec![-4i32; k.saturating_sub(1)];
        loop {
            let mut coords = center.clone();
            let mut shift = 0.0;
            for (a, &o) in offsets.iter().enumerate() {
                coords[a] += o as f64 * step;
                shift += o as f64 * step;
            }
            coords[k - 1] -= shift;
            if coords.iter().all(|&c| c >= 0.0) {
                let v = poly.value(&embed(&coords));
                if v > best_val {
                    best_val = v;
                    best = coords;
                }
            }
            let mut a = 0;
            while a < offsets.len() {
                offsets[a] += 1;
                if offsets[a] <= 4 {
                    break;
                }
                offsets[a] = -4;
                a += 1;
            }
            if a == offsets.len() {
                break;
            }
        }
    }
    embed(&best)
}

fn face_starts(n: usize, w: &[usize]) -> Vec<Vec<f64>> {
    let k = w.len();
    let embed = |coords: Vec<f64>| {
        let mut x = vec![0.0; n];
        for (a, &v) in w.iter().enumerate() {
            x[v] = coords[a];
        }
        x
    };
    let mut starts = vec![embed(vec![1.0 / k as f64; k])];
    if k > 1 {
        for a in 0..k {
            let mut c = vec![0.5 / (k - 1) as f64; k];
            c[a] = 0.5;
            starts.push(embed(c));
        }
        // low-discrepancy interior points
        let roots = [2f64.sqrt(), 3f64.sqrt(), 5f64.sqrt(), 7f64.sqrt(), 11f64.sqrt()];
        for s in 1..=3 {
            let c: Vec<f64> = (0..k).map(|a| 0.1 + (s as f64 * roots[a % roots.len()] * (a + 1) as f64).fract()).collect();
            let total: f64 = c.iter().sum();
            starts.push(embed(c.into_iter().map(|v| v / total).collect()));
        }
    }
    starts
}

/// Global maximizer by enumeration of supports (`n <= 12`).
pub fn exact_oracle(h: &Hypergraph, alpha: &AlphaParams) -> Result<Optimum> {
    let n = h.n();
    if n > ORACLE_MAX_N {
        return Err(Error::OracleTooLarge { n, max: ORACLE_MAX_N });
    }
    if n == 0 {
        return Err(Error::InvalidArgument("cannot optimize over an empty vertex set".into()));
    }
    let cfg = oracle_config();
    let poly = Polynomial::new(h, alpha)?;
    if poly.is_zero() {
        let mut x = vec![0.0; n];
        x[0] = 1.0;
        return Ok(finish(&poly, x, 0, true, &cfg));
    }
    let used = poly.used_vertices();
    let covered = poly.covered_pairs();
    let faces: Vec<u64> = (1u64..(1u64 << n))
        .filter(|&w| w & !used == 0)
        .filter(|&w| {
            (0..n).filter(|&i| w >> i & 1 == 1).all(|i| covered[i] & w == w)
        })
        .collect();

    let per_face: Vec<(Run, usize)> = faces
        .par_iter()
        .map(|&face| {
            let w: Vec<usize> = (0..n).filter(|&i| face >> i & 1 == 1).collect();
            let mut starts = face_starts(n, &w);
            if w.len() <= LATTICE_MAX_SUPPORT {
                starts.push(lattice_scan(&poly, &w));
            }
            let count = starts.len();
            let runs: Vec<Run> = starts.iter().map(|x0| ascend(&poly, x0, face, &cfg)).collect();
            (best_run(runs, &cfg).expect("nonempty"), count)
        })
        .collect();
    let starts_used = per_face.iter().map(|(_, c)| c).sum();
    let best = best_run(per_face.into_iter().map(|(r, _)| r).collect(), &cfg).expect("some face");
    Ok(finish(&poly, best.x, starts_used, best.converged, &cfg))
}
