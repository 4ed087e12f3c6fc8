use std::sync::OnceLock;

use proptest::prelude::*;
use qrm_core::distill::*;
use qrm_core::gates::max_transversal_degree;
use qrm_core::{Execution, QrmCode};

// Thresholds at the largest transversal degree, bisected to 1e-10.
const THRESHOLDS: [(u32, u32, f64); 5] = [
    (5, 1, 0.363_122_565_709),
    (7, 1, 0.232_259_865_291),
    (11, 3, 0.531_656_302_251),
    (13, 3, 0.478_702_583_127),
    (17, 5, 0.602_124_954_797),
];

fn table(d: u32, r: u32) -> AcceptedEnumerator {
    accepted_enumerator(&QrmCode::new(d, r).unwrap(), Method::Auto).unwrap()
}

#[test]
fn d5_table() {
    let t = accepted_enumerator_bruteforce(&QrmCode::new(5, 1).unwrap()).unwrap();
    let expected: Vec<Vec<u64>> = vec![
        vec![1, 0, 0, 0, 0],
        vec![0, 0, 0, 0, 0],
        vec![0, 6, 6, 6, 6],
        vec![16, 8, 8, 8, 8],
        vec![8, 11, 11, 11, 11],
    ];
    assert_eq!(t.counts(), &expected[..]);
}

#[test]
fn bruteforce_matches_charsum() {
    for (d, r) in [(5, 1), (5, 2), (7, 1), (7, 2), (7, 3), (11, 3)] {
        let code = QrmCode::new(d, r).unwrap();
        for exec in [Execution::Sequential, Execution::Parallel] {
            let a = accepted_enumerator_bruteforce_with(&code, exec).unwrap();
            let b = accepted_enumerator_charsum_with(&code, exec).unwrap();
            assert_eq!(a, b, "d {d} r {r} {exec:?}");
        }
    }
}

#[test]
fn table_invariants() {
    for d in [5u32, 7, 11, 13, 17] {
        for r in 1..=max_transversal_degree(d).unwrap() {
            let t = table(d, r);
            assert_eq!(t.total(), (d as u128).pow(d - 1 - r), "d {d} r {r}");
            assert_eq!(t.count(0, 0), 1);
            assert!((1..d).all(|m| t.count(0, m) == 0));
            assert_eq!(t.min_logical_weight(), Some(r as usize + 1), "d {d} r {r}");
        }
    }
}

#[test]
fn json_roundtrip() {
    let t = table(7, 1);
    let back = AcceptedEnumerator::from_json(&t.to_json()).unwrap();
    assert_eq!(t, back);
}

#[test]
fn frozen_thresholds() {
    for (d, r, expected) in THRESHOLDS {
        let t = table(d, r);
        let res = threshold(&t, DEFAULT_THRESHOLD_TOL).unwrap().unwrap();
        assert!(
            (res.eps_star - expected).abs() < 1e-6,
            "d {d}: {} vs {expected}",
            res.eps_star
        );
        assert!(res.bracket.1 - res.bracket.0 <= DEFAULT_THRESHOLD_TOL);
        assert!(res.certificate_holds(&t).unwrap());
    }
}

#[test]
fn thresholds_improve_within_residue_class() {
    let eps = |i: usize| THRESHOLDS[i].2;
    assert!(eps(0) < eps(2) && eps(2) < eps(4));
    assert!(eps(1) < eps(3));
    assert!(eps(2) > 0.5);
}

#[test]
fn scaling_matches_distance() {
    let grid = log_grid(1e-4, 1e-3, 7);
    for (d, r) in [(5, 1), (7, 1), (11, 3), (13, 3)] {
        let slope = scaling_exponent(&table(d, r), &grid).unwrap();
        assert!((slope - (r + 1) as f64).abs() < 0.1, "d {d}: slope {slope}");
    }
}

#[test]
fn near_noiseless_acceptance() {
    for (d, r) in [(5, 1), (7, 1)] {
        assert!(distill_map(&table(d, r), 1e-4).unwrap().p_accept > 0.99);
    }
}

#[test]
fn reference_point_d5() {
    let out = distill_map(&table(5, 1), 0.3).unwrap();
    assert!((out.p_accept - 0.322_070_312_5).abs() < 1e-12);
    assert!((out.eps_out - 0.239_053_972_104).abs() < 1e-11);
}

#[test]
fn gamma_table() {
    let expected = [(5, 2.0), (7, 2.585), (11, 1.661), (13, 1.792), (17, 1.548)];
    for (d, g) in expected {
        assert!((gamma(d).unwrap() - g).abs() < 1e-3, "d {d}");
    }
    let pts = gamma_curves(&[5, 7, 11, 13, 17, 19, 23, 29, 31]).unwrap();
    for class in [1, 2] {
        let g: Vec<f64> = pts
            .iter()
            .filter(|p| p.residue == class)
            .map(|p| p.gamma)
            .collect();
        assert!(g.windows(2).all(|w| w[1] < w[0]), "class {class}: {g:?}");
    }
}

fn cached(which: usize) -> &'static AcceptedEnumerator {
    static TABLES: OnceLock<Vec<AcceptedEnumerator>> = OnceLock::new();
    &TABLES.get_or_init(|| {
        [(5, 1), (7, 1), (7, 2), (11, 3)]
            .iter()
            .map(|&(d, r)| table(d, r))
            .collect()
    })[which]
}

proptest! {
    #[test]
    fn outcome_is_a_distribution(eps in 0.0f64..0.999, which in 0usize..4) {
        let out = distill_map(cached(which), eps).unwrap();
        prop_assert!(out.p_accept > 0.0 && out.p_accept <= 1.0 + 1e-12);
        let total: f64 = out.logical_dist.iter().sum();
        prop_assert!((total - 1.0).abs() < 1e-9);
        prop_assert!(out.logical_dist.iter().all(|&p| p >= 0.0));
        prop_assert!((out.eps_out - (1.0 - out.logical_dist[0])).abs() < 1e-9);
    }

    #[test]
    fn below_threshold_improves(frac in 0.01f64..0.99) {
        let eps = THRESHOLDS[0].2 * frac;
        prop_assert!(distill_map(cached(0), eps).unwrap().eps_out < eps);
    }
}
