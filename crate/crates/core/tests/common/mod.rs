#![allow(dead_code)]

use hyperlag::colex::binomial;
use hyperlag::compress::{compress_set, left_compress_fixpoint};
use hyperlag::hypergraph::k_subsets;
use hyperlag::lagrangian::{
    compression_monotonicity_check, evaluate, gradient, link_value, optimize, support_minimize,
};
use hyperlag::links::link_sets;
use hyperlag::{AlphaParams, Edge, EdgeTypeSet, Hypergraph, SolverConfig, Weighting};
use proptest::prelude::*;
use proptest::test_runner::TestCaseError;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn types(v: &[usize]) -> EdgeTypeSet {
    EdgeTypeSet::new(v.to_vec()).unwrap()
}

/// A graph on `[n]` holding every `r`-set with probability `p`, for each
/// `r` in `levels` not exceeding `n`.
pub fn random_graph(rng: &mut ChaCha8Rng, n: usize, levels: &[usize], p: f64) -> Hypergraph {
    let mut edges = Vec::new();
    for &r in levels.iter().filter(|&&r| r <= n) {
        edges.extend(k_subsets(n, r).filter(|_| rng.gen_bool(p)));
    }
    Hypergraph::new(n, edges).unwrap()
}

/// Coefficients for the levels above 1 with `Σ α_r/(r-1)! <= 1`.
pub fn random_budget_alpha(rng: &mut ChaCha8Rng, levels: &[usize]) -> AlphaParams {
    let upper: Vec<usize> = levels.iter().copied().filter(|&r| r >= 2).collect();
    let weights: Vec<f64> = upper.iter().map(|_| rng.gen_range(0.05..1.0)).collect();
    let total: f64 = weights.iter().sum::<f64>() / rng.gen_range(0.3..1.0);
    let pairs = upper.iter().zip(&weights).map(|(&r, &w)| {
        let f: f64 = (1..r).map(|k| k as f64).product();
        (r, w / total * f)
    });
    AlphaParams::new(1, pairs).unwrap()
}

pub fn random_point(rng: &mut ChaCha8Rng, n: usize) -> Vec<f64> {
    let raw: Vec<f64> = (0..n).map(|_| rng.gen_range(0.01..1.0)).collect();
    let s: f64 = raw.iter().sum();
    raw.into_iter().map(|v| v / s).collect()
}

/// Inputs for the property checks: a seed drives the graph, vertex count
/// and level choice.
pub fn graph_case() -> impl Strategy<Value = (u64, usize, Vec<usize>)> {
    (any::<u64>(), 2usize..=7, prop::sample::subsequence(vec![1usize, 2, 3, 4], 1..=3))
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn free_alpha(rng: &mut ChaCha8Rng, levels: &[usize]) -> AlphaParams {
    let pairs: Vec<(usize, f64)> = levels.iter().skip(1).map(|&r| (r, rng.gen_range(0.0..2.0))).collect();
    AlphaParams::new(levels[0], pairs).unwrap()
}

pub fn prop_gradient(seed: u64, n: usize, levels: &[usize]) -> Result<(), TestCaseError> {
    let mut rng = rng(seed);
    let h = random_graph(&mut rng, n, levels, 0.5);
    let alpha = free_alpha(&mut rng, levels);
    let x = random_point(&mut rng, n);
    let w = Weighting::new(x.clone()).unwrap();
    let g = gradient(&h, &alpha, &w).unwrap();
    let step = 1e-6;
    for i in 0..n {
        let mut up = x.clone();
        let mut down = x.clone();
        up[i] += step;
        down[i] -= step;
        let f = |v: Vec<f64>| hyperlag::lagrangian::Polynomial::new(&h, &alpha).unwrap().value(&v);
        let fd = (f(up) - f(down)) / (2.0 * step);
        let err = (g[i] - fd).abs() / g[i].abs().max(1.0);
        prop_assert!(err <= 1e-6, "coordinate {}: analytic {} vs difference {}", i + 1, g[i], fd);
    }
    Ok(())
}

pub fn prop_compression_monotone(seed: u64, n: usize, levels: &[usize]) -> Result<(), TestCaseError> {
    let mut rng = rng(seed);
    let h = random_graph(&mut rng, n, levels, 0.4);
    let alpha = free_alpha(&mut rng, levels);
    let mut x = random_point(&mut rng, n);
    x.sort_by(|a, b| b.total_cmp(a));
    let w = Weighting::new(x).unwrap();
    for j in 2..=n {
        for i in 1..j {
            prop_assert!(compression_monotonicity_check(&h, &alpha, &w, i, j).unwrap(), "pair ({}, {})", i, j);
        }
    }
    Ok(())
}

pub fn prop_edge_counts(seed: u64, n: usize, levels: &[usize]) -> Result<(), TestCaseError> {
    let mut rng = rng(seed);
    let h = random_graph(&mut rng, n, levels, 0.4);
    for j in 2..=n {
        for i in 1..j {
            prop_assert_eq!(compress_set(&h, i, j).unwrap().level_counts(), h.level_counts());
        }
    }
    let c = left_compress_fixpoint(&h);
    prop_assert_eq!(c.level_counts(), h.level_counts());
    prop_assert!(hyperlag::compress::is_left_compressed(&c));
    Ok(())
}

pub fn prop_subgraph_monotone(seed: u64, n: usize, levels: &[usize]) -> Result<(), TestCaseError> {
    let mut rng = rng(seed);
    let h = random_graph(&mut rng, n, levels, 0.5);
    let alpha = free_alpha(&mut rng, levels);
    let g = Hypergraph::new(n, h.edges().filter(|_| rng.gen_bool(0.6)).collect::<Vec<_>>()).unwrap();
    let cfg = SolverConfig { parallel: false, ..SolverConfig::default() };
    let lg = optimize(&g, &alpha, &cfg).unwrap().value;
    let lh = optimize(&h, &alpha, &cfg).unwrap().value;
    prop_assert!(lg <= lh + 1e-9, "subgraph {} above graph {}", lg, lh);
    Ok(())
}

/// Largest `|(x_i - x_j) L(E_ij, x) - L(E_{i\j}, x)|` over support pairs.
pub fn remark_residual(h: &Hypergraph, alpha: &AlphaParams, x: &Weighting) -> f64 {
    let support = x.support(1e-9);
    let mut worst: f64 = 0.0;
    for (a, &i) in support.iter().enumerate() {
        for &j in &support[a + 1..] {
            let links = link_sets(h, i, Some(j)).unwrap();
            let pair = link_value(alpha, links.levels.iter().map(|(&r, l)| (r, l.pair.as_slice())), x.as_slice()).unwrap();
            let i_minus_j =
                link_value(alpha, links.levels.iter().map(|(&r, l)| (r, l.i_minus_j.as_slice())), x.as_slice()).unwrap();
            let xs = x.as_slice();
            worst = worst.max(((xs[i - 1] - xs[j - 1]) * pair - i_minus_j).abs());
        }
    }
    worst
}

pub fn prop_remark_identity(seed: u64, n: usize, levels: &[usize]) -> Result<(), TestCaseError> {
    let mut rng = rng(seed);
    let h = left_compress_fixpoint(&random_graph(&mut rng, n, levels, 0.5));
    let alpha = free_alpha(&mut rng, levels);
    let cfg = SolverConfig { parallel: false, ..SolverConfig::default() };
    let opt = optimize(&h, &alpha, &cfg).unwrap();
    let opt = support_minimize(&h, &alpha, &opt, &cfg).unwrap();
    let res = remark_residual(&h, &alpha, &opt.weighting);
    prop_assert!(res <= 1e-7, "residual {} at {:?}", res, opt.weighting);
    Ok(())
}

pub fn prop_euler(seed: u64, n: usize, r: usize) -> Result<(), TestCaseError> {
    let mut rng = rng(seed);
    let r = r.min(n);
    let h = random_graph(&mut rng, n, &[r], 0.5);
    let alpha = AlphaParams::new(r, []).unwrap();
    let w = Weighting::new(random_point(&mut rng, n)).unwrap();
    let g = gradient(&h, &alpha, &w).unwrap();
    let lhs: f64 = w.as_slice().iter().zip(&g).map(|(a, b)| a * b).sum();
    let rhs = r as f64 * evaluate(&h, &alpha, &w).unwrap();
    prop_assert!((lhs - rhs).abs() <= 1e-12, "{} vs {}", lhs, rhs);
    Ok(())
}

/// Brute-force count of left-compressed `r`-graphs with `m` edges on `[n]`.
pub fn brute_left_compressed(n: usize, r: usize, m: usize) -> Vec<Hypergraph> {
    let sets: Vec<Edge> = k_subsets(n, r).collect();
    assert!(sets.len() < 32 && binomial(n, r) as usize == sets.len());
    let mut out = Vec::new();
    for pick in 0u32..(1u32 << sets.len()) {
        if pick.count_ones() as usize != m {
            continue;
        }
        let h = Hypergraph::new(n, (0..sets.len()).filter(|&i| pick >> i & 1 == 1).map(|i| sets[i])).unwrap();
        if hyperlag::compress::is_left_compressed(&h) {
            out.push(h);
        }
    }
    out
}
