//! Diagonal phase gates ω^{p(n̂)} treated symbolically.
//!
//! A gate is identified with the exponent polynomial `p`, evaluated on the
//! whole field (n̂ ranges over 0..d), so these are ordinary polynomials of
//! degree <= 3 rather than functions on F_d^*.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::code::QrmCode;
use crate::error::{Error, Result};
use crate::exec::{self, Execution};
use crate::field::{cubic_residues, PrimeField};
use crate::poly::Polynomial;
use crate::sweep::{monomial_basis, Sweep};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PhasePolynomial {
    field: PrimeField,
    coeffs: [u32; 4],
}

impl PhasePolynomial {
    pub fn new(field: PrimeField, coeffs: [u32; 4]) -> Self {
        let d = field.modulus();
        PhasePolynomial {
            field,
            coeffs: coeffs.map(|c| c % d),
        }
    }

    /// M_μ = ω^{μ n̂³}.
    pub fn m_gate(field: PrimeField, mu: u32) -> Self {
        Self::new(field, [0, 0, 0, mu])
    }

    /// The diagonal Clifford ω^{α n̂ + β n̂²}.
    pub fn z_clifford(field: PrimeField, alpha: u32, beta: u32) -> Self {
        Self::new(field, [0, alpha, beta, 0])
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn coeffs(&self) -> [u32; 4] {
        self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.iter().rposition(|&c| c != 0).unwrap_or(0)
    }

    pub fn eval(&self, n: u32) -> u32 {
        let f = self.field;
        self.coeffs
            .iter()
            .rev()
            .fold(0, |acc, &c| f.add(f.mul(acc, n % f.modulus()), c))
    }

    /// p(n̂ + a), expanded binomially.
    pub fn shifted(&self, a: u32) -> Self {
        let f = self.field;
        let binom = [[1, 0, 0, 0], [1, 1, 0, 0], [1, 2, 1, 0], [1, 3, 3, 1]];
        let mut out = [0u32; 4];
        for (k, &c) in self.coeffs.iter().enumerate() {
            for (j, slot) in out.iter_mut().enumerate().take(k + 1) {
                let term = f.mul(f.mul(c, binom[k][j] % f.modulus()), f.pow(a, (k - j) as u64));
                *slot = f.add(*slot, term);
            }
        }
        Self::new(f, out)
    }

    pub fn sub(&self, other: &Self) -> Self {
        let f = self.field;
        let mut out = [0u32; 4];
        for (i, slot) in out.iter_mut().enumerate() {
            *slot = f.sub(self.coeffs[i], other.coeffs[i]);
        }
        Self::new(f, out)
    }
}

/// Exponent of the diagonal factor in M_μ X M_μ† = X ω^{t(n̂)}, namely
/// t = μ((n̂+1)³ - n̂³) = μ(3n̂² + 3n̂ + 1).
pub fn conjugate_x_by_m(field: PrimeField, mu: u32) -> PhasePolynomial {
    let m = PhasePolynomial::m_gate(field, mu);
    m.shifted(1).sub(&m)
}

/// Level of a diagonal phase gate in the Clifford hierarchy: 1 for Pauli
/// (linear exponent), 2 for Clifford (quadratic), 3 for a genuine cubic.
pub fn hierarchy_level(gate: &PhasePolynomial) -> Result<u8> {
    let f = gate.field();
    if f.modulus() == 3 {
        return Err(Error::UnsupportedDimension(3));
    }
    f.require_qudit()?;
    let a3 = gate.coeffs()[3];
    Ok(match gate.degree() {
        0 | 1 => 1,
        2 => 2,
        _ if f.mul(3, a3) != 0 => 3,
        _ => {
            return Err(Error::Consistency(
                "cubic phase with vanishing 3·a3 in a prime field d > 3".into(),
            ))
        }
    })
}

/// r = ⌊(d-2)/3⌋, the largest degree with 3r < d - 1.
pub fn max_transversal_degree(d: u32) -> Result<u32> {
    PrimeField::qudit(d)?;
    Ok((d - 2) / 3)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TransversalityWitness {
    pub mu: u32,
    pub k: u32,
    pub polynomial: Polynomial,
    /// S(F³) = Σ_x F(x)³ as computed.
    pub power_sum: u32,
    /// -k³, the value required for the logical phase ω^{μk³}.
    pub expected: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TransversalityReport {
    pub holds: bool,
    /// Number of polynomials F examined (each against every requested μ).
    pub checked: u64,
    pub witness: Option<TransversalityWitness>,
}

/// Checks that M_{-μ}^{⊗n} multiplies every basis state |ψ_F> in the
/// support of |k_L> by the same phase ω^{μk³}.
///
/// M_{-μ}^{⊗n}|ψ_F> = ω^{-μ S(F³)}|ψ_F> with S(F³) = Σ_x F(x)³, so the
/// check is μ·S(F³) = -μ·k³ for all k and all F with deg(F) <= r, f_0 = k.
pub fn transversality_check(code: &QrmCode, mu: u32) -> Result<TransversalityReport> {
    transversality_check_with(code, mu, Execution::default())
}

pub fn transversality_check_with(code: &QrmCode, mu: u32, exec: Execution) -> Result<TransversalityReport> {
    check_phases(code, &[mu % code.d()], exec)
}

/// [`transversality_check`] for every μ in F_d^* in one pass over the
/// polynomials.
pub fn transversality_check_all(code: &QrmCode) -> Result<TransversalityReport> {
    transversality_check_all_with(code, Execution::default())
}

pub fn transversality_check_all_with(code: &QrmCode, exec: Execution) -> Result<TransversalityReport> {
    let mus: Vec<u32> = code.field().nonzero().collect();
    check_phases(code, &mus, exec)
}

fn check_phases(code: &QrmCode, mus: &[u32], exec: Execution) -> Result<TransversalityReport> {
    let f = code.field();
    let d = f.modulus() as u64;
    let r = code.r();
    let total = d.pow(r + 1);
    let basis = monomial_basis(f, 0..=r as u64);
    let n = code.n();
    let cubes: Vec<u64> = f.elements().map(|y| f.pow(y, 3) as u64).collect();

    let failure = exec::find_in_chunks(
        exec,
        exec::chunk_ranges(total, exec::chunk_len(total, d)),
        |range| -> Option<TransversalityWitness> {
            let mut sweep = Sweep::new(f, &basis, n, range.start);
            for _ in range {
                let sum = (sweep.values().iter().map(|&v| cubes[v as usize]).sum::<u64>() % d) as u32;
                let k = sweep.digits()[0];
                let expected = f.neg(cubes[k as usize] as u32);
                if let Some(&mu) = mus.iter().find(|&&mu| f.mul(mu, sum) != f.mul(mu, expected)) {
                    let mut coeffs = vec![0u32; n];
                    coeffs[..=r as usize].copy_from_slice(sweep.digits());
                    return Some(TransversalityWitness {
                        mu,
                        k,
                        polynomial: Polynomial::from_coeffs(f, &coeffs),
                        power_sum: sum,
                        expected,
                    });
                }
                sweep.step();
            }
            None
        },
    );

    Ok(TransversalityReport {
        holds: failure.is_none(),
        checked: total,
        witness: failure,
    })
}

/// Clifford-equivalence classes of the gates M_μ, μ != 0: the cosets of
/// the cubic residues in F_d^*.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MuClassification {
    pub d: u32,
    pub classes: Vec<Vec<u32>>,
}

impl MuClassification {
    pub fn class_of(&self, mu: u32) -> Option<usize> {
        self.classes.iter().position(|c| c.contains(&mu))
    }

    pub fn equivalent(&self, a: u32, b: u32) -> bool {
        matches!((self.class_of(a), self.class_of(b)), (Some(x), Some(y)) if x == y)
    }
}

pub fn mu_equivalence_classes(d: u32) -> Result<MuClassification> {
    let f = PrimeField::qudit(d)?;
    let residues = cubic_residues(f)?;
    let mut seen = BTreeSet::new();
    let mut classes = Vec::new();
    for mu in f.nonzero() {
        if seen.contains(&mu) {
            continue;
        }
        let coset: BTreeSet<u32> = residues.iter().map(|&c| f.mul(mu, c)).collect();
        seen.extend(coset.iter().copied());
        classes.push(coset.into_iter().collect());
    }
    Ok(MuClassification { d, classes })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn field(d: u32) -> PrimeField {
        PrimeField::new(d).unwrap()
    }

    #[test]
    fn conjugation_examples() {
        assert_eq!(conjugate_x_by_m(field(5), 0).coeffs(), [0, 0, 0, 0]);
        assert_eq!(conjugate_x_by_m(field(5), 1).coeffs(), [1, 3, 3, 0]);
        assert_eq!(conjugate_x_by_m(field(7), 2).coeffs(), [2, 6, 6, 0]);
    }

    #[test]
    fn conjugate_is_clifford_non_pauli() {
        for d in [5, 7, 11, 13, 17] {
            for mu in 1..d {
                let t = conjugate_x_by_m(field(d), mu);
                assert_eq!(hierarchy_level(&t).unwrap(), 2);
                assert_eq!(
                    hierarchy_level(&PhasePolynomial::m_gate(field(d), mu)).unwrap(),
                    3
                );
            }
        }
    }

    #[test]
    fn hierarchy_levels() {
        let f = field(5);
        assert_eq!(hierarchy_level(&PhasePolynomial::z_clifford(f, 1, 0)).unwrap(), 1);
        assert_eq!(hierarchy_level(&PhasePolynomial::z_clifford(f, 2, 3)).unwrap(), 2);
        assert_eq!(
            hierarchy_level(&PhasePolynomial::m_gate(field(3), 1)),
            Err(Error::UnsupportedDimension(3))
        );
    }

    #[test]
    fn shifted_matches_pointwise() {
        let f = field(11);
        let p = PhasePolynomial::new(f, [3, 7, 2, 9]);
        for a in 0..11 {
            let q = p.shifted(a);
            for n in 0..11 {
                assert_eq!(q.eval(n), p.eval(n + a));
            }
        }
    }

    #[test]
    fn max_degrees() {
        assert_eq!(max_transversal_degree(5).unwrap(), 1);
        assert_eq!(max_transversal_degree(11).unwrap(), 3);
        assert_eq!(max_transversal_degree(17).unwrap(), 5);
        for d in [5u32, 7, 11, 13, 17] {
            let r = max_transversal_degree(d).unwrap();
            assert!(3 * r < d - 1);
            assert_eq!(r + 1, (d + 1) / 3);
        }
    }

    #[test]
    fn transversality_small() {
        let code = QrmCode::new(5, 1).unwrap();
        for mu in 1..5 {
            let report = transversality_check(&code, mu).unwrap();
            assert!(report.holds);
            assert_eq!(report.checked, 25);
        }
    }

    #[test]
    fn transversality_fails_past_bound() {
        let code = QrmCode::new(7, 2).unwrap();
        let mut witnesses = Vec::new();
        for exec in [Execution::Sequential, Execution::Parallel] {
            let report = transversality_check_with(&code, 1, exec).unwrap();
            assert!(!report.holds);
            let w = report.witness.unwrap();
            assert_ne!(w.power_sum, w.expected);
            assert_eq!(w.polynomial.cube().power_sum().unwrap(), w.power_sum);
            witnesses.push(w);
        }
        assert_eq!(witnesses[0], witnesses[1]);
    }

    #[test]
    fn transversality_all_mu() {
        let report = transversality_check_all(&QrmCode::new(11, 3).unwrap()).unwrap();
        assert!(report.holds);
        assert_eq!(report.checked, 11u64.pow(4));
        let report = transversality_check_all(&QrmCode::new(13, 4).unwrap()).unwrap();
        assert_eq!(report.witness.unwrap().mu, 1);
    }

    #[test]
    fn mu_classes() {
        let c7 = mu_equivalence_classes(7).unwrap();
        assert_eq!(c7.classes, vec![vec![1, 6], vec![2, 5], vec![3, 4]]);
        assert!(c7.equivalent(2, 5));
        assert!(!c7.equivalent(1, 2));
        assert_eq!(mu_equivalence_classes(5).unwrap().classes, vec![vec![1, 2, 3, 4]]);
        let c13 = mu_equivalence_classes(13).unwrap();
        assert_eq!(c13.classes.len(), 3);
        assert!(c13.classes.iter().all(|c| c.len() == 4));
    }
}
