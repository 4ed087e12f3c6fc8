use qrm_core::code::PauliOperator;
use qrm_core::distill::{accepted_enumerator_bruteforce, distill_map};
use qrm_core::oracle::*;
use qrm_core::{Error, QrmCode};

fn d5() -> QrmCode {
    QrmCode::new(5, 1).unwrap()
}

#[test]
fn distillation_reduction_matches_state_vector() {
    let code = d5();
    let table = accepted_enumerator_bruteforce(&code).unwrap();
    for mu in [1, 3] {
        let oracle = OracleDistillation::new(&code, mu).unwrap();
        for eps in [0.0, 0.05, 0.1, 0.2, 0.3, 0.4, 0.5] {
            let exact = oracle.outcome(eps).unwrap();
            let combinatorial = distill_map(&table, eps).unwrap();
            assert!(
                (exact.p_accept - combinatorial.p_accept).abs() < END_TO_END_TOL,
                "eps {eps}"
            );
            assert!(
                (exact.eps_out - combinatorial.eps_out).abs() < END_TO_END_TOL,
                "eps {eps}"
            );
            for (a, b) in exact.logical_dist.iter().zip(&combinatorial.logical_dist) {
                assert!((a - b).abs() < END_TO_END_TOL);
            }
        }
    }
}

#[test]
fn noiseless_input_is_always_accepted() {
    let out = simulate_distillation_exact(&d5(), 1, 0.0).unwrap();
    assert!((out.p_accept - 1.0).abs() < END_TO_END_TOL);
    assert!(out.eps_out.abs() < END_TO_END_TOL);
}

#[test]
fn simulation_capacity() {
    let err = OracleDistillation::new(&QrmCode::new(7, 1).unwrap(), 1).unwrap_err();
    assert!(err.is_capacity());
}

#[test]
fn depolarized_input_is_diagonal_in_twisted_basis() {
    let eps = 0.2;
    let s = twisted_basis_spectrum(5, 1, eps).unwrap();
    assert!((s.diagonal[0] - (1.0 - eps)).abs() < GATE_TOL);
    for &v in &s.diagonal[1..] {
        assert!((v - eps / 4.0).abs() < GATE_TOL);
    }
    assert!(s.max_off_diagonal < GATE_TOL);
}

#[test]
fn logical_zero_amplitudes() {
    let state = build_logical_state(&d5(), 0).unwrap();
    let nonzero: Vec<_> = state.amplitudes().iter().filter(|a| a.norm() > 1e-14).collect();
    assert_eq!(nonzero.len(), 5);
    for a in nonzero {
        assert!((a.re - 5f64.sqrt().recip()).abs() < GATE_TOL && a.im.abs() < GATE_TOL);
    }
}

#[test]
fn stabilizers_and_logicals() {
    for (d, r) in [(5, 1), (5, 2), (7, 1)] {
        let code = QrmCode::new(d, r).unwrap();
        assert!(verify_stabilizers(&code).unwrap(), "d {d} r {r}");
        assert!(verify_logical_operators(&code).unwrap(), "d {d} r {r}");
    }
}

#[test]
fn corrupted_generator_is_rejected() {
    let code = d5();
    let mut gens: Vec<PauliOperator> = code.generators().cloned().collect();
    let bad = gens[0].x_part().to_vec();
    let mut x = bad.clone();
    x[0] = (x[0] + 1) % 5;
    gens[0] = PauliOperator::new(code.field(), x, vec![0; 4]).unwrap();
    assert!(!generators_fix_codewords(&code, &gens).unwrap());
}

#[test]
fn numeric_transversal_phase() {
    let code = d5();
    for mu in 0..5 {
        assert!(verify_transversality_numeric(&code, mu).unwrap());
    }
    assert!(verify_transversality_numeric(&QrmCode::new(7, 1).unwrap(), 2).unwrap());
    // 3r = d - 1 at d = 7, r = 2: the gate is no longer transversal.
    assert!(!verify_transversality_numeric(&QrmCode::new(7, 2).unwrap(), 1).unwrap());
}

#[test]
fn gate_identities() {
    for d in [5, 7] {
        assert!(verify_gate_identities(d).unwrap().all());
    }
}

#[test]
fn clifford_conjugation_identities() {
    for d in [5, 7] {
        let report = verify_conjugation_identities(d).unwrap();
        assert!(report.all(), "{report:?}");
    }
}

#[test]
fn affine_conjugation_scales_cubic_term() {
    assert_eq!(affine_conjugate_cubic(5, 0, 2, 1, false).unwrap(), 3);
    // Opposite order picks up β^{-3} = 2 at d = 5.
    assert_eq!(affine_conjugate_cubic(5, 0, 2, 1, true).unwrap(), 2);
    assert_eq!(affine_conjugate_cubic(5, 4, 3, 0, false).unwrap(), 0);
    assert!(matches!(
        affine_conjugate_cubic(5, 0, 0, 1, false),
        Err(Error::Parameter(_))
    ));
}

#[test]
fn codespace_projector() {
    let report = codespace_projector_report(&d5()).unwrap();
    assert!(report.idempotency_error < GATE_TOL);
    assert!((report.rank - 5.0).abs() < 1e-9);
}

#[test]
fn full_field_interpolation_roundtrip() {
    let f = qrm_core::PrimeField::new(7).unwrap();
    let coeffs = [3, 0, 5, 1, 0, 0, 2];
    let values: Vec<u32> = f
        .elements()
        .map(|x| coeffs.iter().rev().fold(0, |acc, &c| f.add(f.mul(acc, x), c)))
        .collect();
    assert_eq!(full_field_coeffs(f, &values), coeffs.to_vec());
}
