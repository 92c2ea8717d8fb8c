mod common;

use common::*;
use hyperlag::colex::{colex_first_m, colex_less};
use hyperlag::format;
use hyperlag::lagrangian::{characteristic_vector, evaluate, exact_oracle, optimize, project_to_simplex};
use hyperlag::theorems::{complete_uniform_value, th123_value, th1r_value, th2_value};
use hyperlag::{complete, AlphaParams, SolverConfig};
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn gradient_matches_central_differences((seed, n, levels) in graph_case()) {
        prop_gradient(seed, n, &levels)?;
    }

    #[test]
    fn compression_never_lowers_value_at_sorted_points((seed, n, levels) in graph_case()) {
        prop_compression_monotone(seed, n, &levels)?;
    }

    #[test]
    fn compression_preserves_level_counts((seed, n, levels) in graph_case()) {
        prop_edge_counts(seed, n, &levels)?;
    }

    #[test]
    fn subgraphs_have_smaller_lagrangian((seed, n, levels) in graph_case()) {
        prop_subgraph_monotone(seed, n, &levels)?;
    }

    #[test]
    fn link_identity_at_minimal_support_optima((seed, n, levels) in graph_case()) {
        prop_remark_identity(seed, n, &levels)?;
    }

    #[test]
    fn euler_identity_on_uniform_graphs(seed in any::<u64>(), n in 1usize..=8, r in 1usize..=4) {
        prop_euler(seed, n, r)?;
    }

    #[test]
    fn projection_is_feasible_and_idempotent(v in prop::collection::vec(-5.0f64..5.0, 1..12)) {
        let p = project_to_simplex(&v);
        let s: f64 = p.as_slice().iter().sum();
        prop_assert!((s - 1.0).abs() < 1e-12);
        prop_assert!(p.as_slice().iter().all(|&x| x >= 0.0));
        let q = project_to_simplex(p.as_slice());
        for (a, b) in p.as_slice().iter().zip(q.as_slice()) {
            prop_assert!((a - b).abs() < 1e-12);
        }
    }

    #[test]
    fn colex_is_a_strict_total_order(
        a in prop::collection::btree_set(1usize..12, 3),
        b in prop::collection::btree_set(1usize..12, 3),
    ) {
        let a: Vec<usize> = a.into_iter().collect();
        let b: Vec<usize> = b.into_iter().collect();
        if a == b {
            prop_assert!(colex_less(&a, &b).is_err());
        } else {
            prop_assert_ne!(colex_less(&a, &b).unwrap(), colex_less(&b, &a).unwrap());
        }
    }

    #[test]
    fn colex_segments_are_nested_and_round_trip(r in 1usize..=4, m in 1usize..40) {
        let t = types(&[r]);
        let g = colex_first_m(&t, m).unwrap();
        prop_assert_eq!(g.edge_count(), m);
        prop_assert!(colex_first_m(&t, m + 1).unwrap().edges().take(m).eq(g.edges()));
        prop_assert_eq!(format::parse(&format::write(&g)).unwrap(), g);
    }
}

#[test]
fn closed_forms_match_uniform_evaluation() {
    for t in 3..=9 {
        let all: Vec<usize> = (1..=t).collect();
        let x = characteristic_vector(&all, t).unwrap();
        for a in [0.25, 1.0, 2.5] {
            let k12 = complete(&types(&[1, 2]), t).unwrap();
            let v = evaluate(&k12, &AlphaParams::new(1, [(2, a)]).unwrap(), &x).unwrap();
            assert!((v - th2_value(a, t).unwrap()).abs() < 1e-12);
            for r in (2..=4).filter(|&r| r <= t) {
                let k = complete(&types(&[1, r]), t).unwrap();
                let v = evaluate(&k, &AlphaParams::new(1, [(r, a)]).unwrap(), &x).unwrap();
                assert!((v - th1r_value(a, r, t).unwrap()).abs() < 1e-12);
            }
            let k123 = complete(&types(&[1, 2, 3]), t).unwrap();
            let alpha = AlphaParams::new(1, [(2, a), (3, 1.0 / a)]).unwrap();
            let v = evaluate(&k123, &alpha, &x).unwrap();
            assert!((v - th123_value(a, 1.0 / a, t).unwrap()).abs() < 1e-12);
            assert!((v - complete_uniform_value(&types(&[1, 2, 3]), &alpha, t).unwrap()).abs() < 1e-12);
        }
    }
}

#[test]
fn complete_graphs_peak_at_the_uniform_point() {
    let cfg = SolverConfig::default();
    for (lv, t) in [(vec![2], 6), (vec![3], 5), (vec![1, 3], 4), (vec![2, 4], 5)] {
        let ty = types(&lv);
        let alpha = AlphaParams::for_types(&ty, lv.iter().skip(1).map(|&r| (r, 0.7))).unwrap();
        let k = complete(&ty, t).unwrap();
        let opt = optimize(&k, &alpha, &cfg).unwrap();
        let expect = complete_uniform_value(&ty, &alpha, t).unwrap();
        assert!((opt.value - expect).abs() < 1e-9, "{lv:?}: {} vs {expect}", opt.value);
        assert!((exact_oracle(&k, &alpha).unwrap().value - expect).abs() < 1e-9);
    }
}

#[test]
fn reports_serialize() {
    let h = complete(&types(&[2]), 4).unwrap();
    let opt = optimize(&h, &AlphaParams::ones(&types(&[2])), &SolverConfig::default()).unwrap();
    let json = serde_json::to_string(&opt).unwrap();
    let back: hyperlag::Optimum = serde_json::from_str(&json).unwrap();
    assert_eq!(back, opt);
    let v: serde_json::Value = serde_json::from_str(&json).unwrap();
    for key in ["value", "weighting", "support", "kkt_residual", "starts_used", "converged"] {
        assert!(v.get(key).is_some(), "{key}");
    }
}
