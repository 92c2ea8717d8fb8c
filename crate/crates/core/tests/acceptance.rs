//! Acceptance criteria, one line per criterion. Exits nonzero if any fails.

mod common;

use std::process::ExitCode;
use std::time::Instant;

use common::*;
use hyperlag::colex::{binomial, colex_first_m};
use hyperlag::lab::{scan, talbot_range, verify_connection, RangeVariant, ScanConfig};
use hyperlag::lagrangian::{characteristic_vector, evaluate, exact_oracle, optimize};
use hyperlag::theorems::{
    connection_compose, connection_range, reduce_level1, th123_hypothesis, th123_value, th1r_hypothesis,
    th1r_value, th2_value, Reduction,
};
use hyperlag::{complete, AlphaParams, Hypergraph, SolverConfig};
use proptest::test_runner::{Config, TestRunner};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

struct Outcome {
    ok: bool,
    detail: String,
}

fn pass(detail: impl Into<String>) -> Outcome {
    Outcome { ok: true, detail: detail.into() }
}

fn fail(detail: impl Into<String>) -> Outcome {
    Outcome { ok: false, detail: detail.into() }
}

fn cfg() -> SolverConfig {
    SolverConfig::default()
}

fn motzkin_straus() -> Outcome {
    let start = Instant::now();
    let ty = types(&[2]);
    let alpha = AlphaParams::ones(&ty);
    let mut worst: f64 = 0.0;
    for t in 2..=10 {
        let v = optimize(&complete(&ty, t).unwrap(), &alpha, &cfg()).unwrap().value;
        worst = worst.max((v - 0.5 * (1.0 - 1.0 / t as f64)).abs());
    }
    let secs = start.elapsed().as_secs_f64();
    let detail = format!("max error {worst:.2e}, {secs:.3}s");
    if worst <= 1e-8 && secs < 1.0 {
        pass(detail)
    } else {
        fail(detail)
    }
}

fn with_pendants(k: &Hypergraph, t: usize) -> Hypergraph {
    let mut edges: Vec<_> = k.edges().collect();
    for p in 1..=3 {
        edges.push(hyperlag::Edge::from_vertices(&[1 + (p - 1) % t, t + p]).unwrap());
    }
    Hypergraph::new(t + 3, edges).unwrap()
}

fn theorem_12() -> Outcome {
    let ty = types(&[1, 2]);
    let mut worst: f64 = 0.0;
    let mut worst_char: f64 = 0.0;
    let mut cases = 0;
    for a in [0.5, 1.0, 2.0, 3.0] {
        for t in 3..=8usize {
            if (t as f64) < a {
                continue;
            }
            let alpha = AlphaParams::new(1, [(2, a)]).unwrap();
            let k = complete(&ty, t).unwrap();
            let expect = th2_value(a, t).unwrap();
            for h in [k.clone(), with_pendants(&k, t)] {
                let v = optimize(&h, &alpha, &cfg()).unwrap().value;
                worst = worst.max((v - expect).abs());
                let clique: Vec<usize> = (1..=t).collect();
                let x = characteristic_vector(&clique, h.n()).unwrap();
                worst_char = worst_char.max((evaluate(&h, &alpha, &x).unwrap() - expect).abs());
                cases += 1;
            }
        }
    }
    let detail = format!("{cases} graphs, solver error {worst:.2e}, clique vector error {worst_char:.2e}");
    if worst <= 1e-7 && worst_char <= 1e-12 {
        pass(detail)
    } else {
        fail(detail)
    }
}

fn theorems_13_123() -> Outcome {
    let mut worst: f64 = 0.0;
    let mut cases = 0;
    for a in [0.5, 1.0, 2.0, 3.0, 4.0] {
        for t in 3..=8 {
            if !th1r_hypothesis(a, 3, t).unwrap() {
                continue;
            }
            let k = complete(&types(&[1, 3]), t).unwrap();
            let v = optimize(&k, &AlphaParams::new(1, [(3, a)]).unwrap(), &cfg()).unwrap().value;
            worst = worst.max((v - th1r_value(a, 3, t).unwrap()).abs());
            cases += 1;
        }
    }
    for (a2, a3) in [(0.5, 0.5), (1.0, 1.0), (1.0, 2.0), (2.0, 1.0), (3.0, 0.5)] {
        for t in 3..=8 {
            if !th123_hypothesis(a2, a3, t).unwrap() {
                continue;
            }
            let k = complete(&types(&[1, 2, 3]), t).unwrap();
            let v = optimize(&k, &AlphaParams::new(1, [(2, a2), (3, a3)]).unwrap(), &cfg()).unwrap().value;
            worst = worst.max((v - th123_value(a2, a3, t).unwrap()).abs());
            cases += 1;
        }
    }
    let detail = format!("{cases} complete graphs, max error {worst:.2e}");
    if worst <= 1e-7 {
        pass(detail)
    } else {
        fail(detail)
    }
}

fn lemma_window() -> Outcome {
    let ty = types(&[3]);
    let alpha = AlphaParams::ones(&ty);
    let mut worst: f64 = 0.0;
    let mut cases = 0;
    for t in 3..=6usize {
        let c = binomial(t, 3) as usize;
        let expect = c as f64 / (t * t * t) as f64;
        for m in c..=c + binomial(t - 1, 2) as usize {
            let v = optimize(&colex_first_m(&ty, m).unwrap(), &alpha, &cfg()).unwrap().value;
            worst = worst.max((v - expect).abs());
            cases += 1;
        }
    }
    let detail = format!("{cases} colex graphs, max error {worst:.2e}");
    if worst <= 1e-7 {
        pass(detail)
    } else {
        fail(detail)
    }
}

fn talbot_scan() -> Outcome {
    let ty = types(&[3]);
    let alpha = AlphaParams::ones(&ty);
    let scfg = ScanConfig::default();
    let mut ok = true;
    let mut parts = Vec::new();
    for t in [4usize, 5] {
        let target = binomial(t, 3) as f64 / (t * t * t) as f64;
        let (lo, hi) = talbot_range(3, t, RangeVariant::Tal).unwrap();
        for m in lo..=hi {
            let start = Instant::now();
            let rep = scan(&ty, &alpha, m as usize, t + 1, &scfg).unwrap();
            let secs = start.elapsed().as_secs_f64();
            let close = (rep.extremal_value - target).abs() <= 1e-7;
            let good = rep.complete && rep.conjecture_holds && close && secs < 300.0;
            ok &= good;
            parts.push(format!(
                "t={t} m={m}: holds={} extremal={:.10} target={:.10}{}",
                rep.conjecture_holds,
                rep.extremal_value,
                target,
                if good { "" } else { " <- mismatch" }
            ));
        }
    }
    let detail = parts.join("; ");
    if ok {
        pass(detail)
    } else {
        fail(detail)
    }
}

fn oracle_corpus() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut worst: f64 = 0.0;
    for _ in 0..50 {
        let n = rng.gen_range(3..=8);
        let mut levels = vec![1];
        for r in 2..=4 {
            if rng.gen_bool(0.6) {
                levels.push(r);
            }
        }
        if levels.len() == 1 {
            levels.push(rng.gen_range(2..=4));
        }
        let p = rng.gen_range(0.25..0.8);
        let h = random_graph(&mut rng, n, &levels, p);
        let alpha = random_budget_alpha(&mut rng, &levels);
        let a = optimize(&h, &alpha, &cfg()).unwrap().value;
        let b = exact_oracle(&h, &alpha).unwrap().value;
        worst = worst.max((a - b).abs());
    }
    let detail = format!("50 graphs, max disagreement {worst:.2e}");
    if worst <= 1e-7 {
        pass(detail)
    } else {
        fail(detail)
    }
}

fn property_suites() -> Outcome {
    let mut failures = Vec::new();
    let mut run = |name: &str, f: &dyn Fn(u64, usize, Vec<usize>) -> Result<(), proptest::test_runner::TestCaseError>| {
        let mut runner = TestRunner::new(Config { cases: 200, failure_persistence: None, ..Config::default() });
        if let Err(e) = runner.run(&graph_case(), |(seed, n, levels)| f(seed, n, levels)) {
            failures.push(format!("{name}: {e}"));
        }
    };
    run("gradient", &|s, n, l| prop_gradient(s, n, &l));
    run("compression monotone", &|s, n, l| prop_compression_monotone(s, n, &l));
    run("edge counts", &|s, n, l| prop_edge_counts(s, n, &l));
    run("subgraph monotone", &|s, n, l| prop_subgraph_monotone(s, n, &l));
    run("link identity", &|s, n, l| prop_remark_identity(s, n, &l));
    run("euler", &|s, n, l| prop_euler(s, n.max(1) + 1, l[0]));
    if failures.is_empty() {
        pass("6 suites x 200 cases")
    } else {
        fail(failures.join("; "))
    }
}

fn isolated_level1() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(26);
    let mut worst: f64 = 0.0;
    let mut unit_ok = true;
    let mut unit_cases = 0;
    for case in 0..20 {
        let n = rng.gen_range(5..=8);
        let mut levels = vec![1, 2];
        if rng.gen_bool(0.5) {
            levels.push(3);
        }
        let alpha = random_budget_alpha(&mut rng, &levels);
        let all_isolated = case % 4 == 0;
        let v1: Vec<usize> = (1..=n).filter(|_| rng.gen_bool(0.7)).collect();
        let v1 = if v1.is_empty() { vec![1] } else { v1 };
        let isolated: Vec<usize> =
            if all_isolated { v1.clone() } else { v1.iter().copied().filter(|_| rng.gen_bool(0.35)).collect() };
        let base = random_graph(&mut rng, n, &levels[1..], 0.5);
        let mut edges: Vec<_> = v1.iter().map(|&v| hyperlag::Edge::singleton(v)).collect();
        edges.extend(base.edges().filter(|e| {
            let inside = e.vertices().all(|v| v1.contains(&v));
            !(inside && e.vertices().any(|v| isolated.contains(&v)))
        }));
        let h = Hypergraph::new(n, edges).unwrap();
        let report = reduce_level1(&h, &alpha).unwrap();
        assert!(report.hypothesis_ok);
        let lh = optimize(&h, &alpha, &cfg()).unwrap().value;
        match report.reduction {
            Reduction::UnitValue => {
                unit_cases += 1;
                unit_ok &= lh == 1.0;
            }
            Reduction::Graph { graph, .. } => {
                let lr = optimize(&graph, &alpha, &cfg()).unwrap().value;
                worst = worst.max((lh - lr).abs());
            }
        }
    }
    let detail = format!("20 graphs ({unit_cases} fully isolated), max error {worst:.2e}, unit values exact: {unit_ok}");
    if worst <= 1e-7 && unit_ok && unit_cases > 0 {
        pass(detail)
    } else {
        fail(detail)
    }
}

fn connection() -> Outcome {
    let scfg = ScanConfig::default();
    let mut worst: f64 = 0.0;
    let mut failed = Vec::new();
    let mut cases = 0;
    for lv in [[1, 2], [1, 3]] {
        let ty = types(&lv);
        let alpha = AlphaParams::ones(&ty);
        for t in 2..=4 {
            let (lo, hi) = connection_range(&ty, t);
            for m in lo as usize + 1..=hi as usize {
                let predicted = connection_compose(&ty, &alpha, m, t, &cfg()).unwrap();
                let computed = optimize(&colex_first_m(&ty, m).unwrap(), &alpha, &cfg()).unwrap().value;
                worst = worst.max((predicted - computed).abs());
                let verdict = verify_connection(&ty, &alpha, m, 6, &scfg).unwrap();
                if !verdict.passed {
                    failed.push(format!("T={ty} m={m}: {:?}", verdict.notes));
                }
                cases += 1;
            }
        }
    }
    let detail = format!("{cases} (T, m) pairs, max compose error {worst:.2e}, scan failures {}", failed.len());
    if worst <= 1e-7 && failed.is_empty() {
        pass(detail)
    } else {
        fail(format!("{detail}: {}", failed.join("; ")))
    }
}

type Criterion = (&'static str, fn() -> Outcome);

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        ("1 graph clique values", motzkin_straus),
        ("2 {1,2} clique values", theorem_12),
        ("3 {1,3} and {1,2,3} clique values", theorems_13_123),
        ("4 colex window", lemma_window),
        ("5 colex conjecture scan", talbot_scan),
        ("6 solver vs oracle corpus", oracle_corpus),
        ("7 property suites", property_suites),
        ("8 level-1 reduction", isolated_level1),
        ("9 level-1 connection", connection),
    ];
    let mut all = true;
    for (name, f) in criteria {
        let start = Instant::now();
        let out = f();
        all &= out.ok;
        println!(
            "{} criterion {name} ({:.1}s): {}",
            if out.ok { "PASS" } else { "FAIL" },
            start.elapsed().as_secs_f64(),
            out.detail
        );
    }
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
