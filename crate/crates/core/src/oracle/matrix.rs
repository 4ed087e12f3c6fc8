use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::field::PrimeField;
use crate::gates::PhasePolynomial;

/// ω^k with ω = exp(2πi/d).
pub fn omega_pow(d: u32, k: u32) -> Complex64 {
    Complex64::from_polar(1.0, 2.0 * PI * (k % d) as f64 / d as f64)
}

/// Recovers k from ω^k, or `None` if `z` is not a d-th root of unity
/// within `tol`.
pub fn root_of_unity_exponent(d: u32, z: Complex64, tol: f64) -> Option<u32> {
    let turns = z.arg() / (2.0 * PI) * d as f64;
    let k = (turns.round() as i64).rem_euclid(d as i64) as u32;
    ((z - omega_pow(d, k)).norm() < tol).then_some(k)
}

/// Dense square matrix, row-major.
#[derive(Clone, Debug, PartialEq)]
pub struct GateMatrix {
    dim: usize,
    data: Vec<Complex64>,
}

impl GateMatrix {
    pub fn from_fn(dim: usize, f: impl Fn(usize, usize) -> Complex64) -> Self {
        let mut data = Vec::with_capacity(dim * dim);
        for i in 0..dim {
            for j in 0..dim {
                data.push(f(i, j));
            }
        }
        GateMatrix { dim, data }
    }

    pub fn identity(dim: usize) -> Self {
        Self::from_fn(dim, |i, j| {
            if i == j {
                Complex64::new(1.0, 0.0)
            } else {
                Complex64::new(0.0, 0.0)
            }
        })
    }

    pub fn diagonal(entries: &[Complex64]) -> Self {
        Self::from_fn(entries.len(), |i, j| {
            if i == j {
                entries[i]
            } else {
                Complex64::new(0.0, 0.0)
            }
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        self.data[row * self.dim + col]
    }

    pub fn mul(&self, other: &GateMatrix) -> GateMatrix {
        assert_eq!(self.dim, other.dim);
        let n = self.dim;
        Self::from_fn(n, |i, j| (0..n).map(|k| self.get(i, k) * other.get(k, j)).sum())
    }

    pub fn adjoint(&self) -> GateMatrix {
        Self::from_fn(self.dim, |i, j| self.get(j, i).conj())
    }

    pub fn pow(&self, k: u32) -> GateMatrix {
        (0..k).fold(Self::identity(self.dim), |acc, _| acc.mul(self))
    }

    pub fn max_abs_diff(&self, other: &GateMatrix) -> f64 {
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    pub fn approx_eq(&self, other: &GateMatrix, tol: f64) -> bool {
        self.dim == other.dim && self.max_abs_diff(other) < tol
    }

    pub fn is_unitary(&self, tol: f64) -> bool {
        self.mul(&self.adjoint())
            .approx_eq(&Self::identity(self.dim), tol)
    }

    /// Diagonal entries if every off-diagonal entry is below `tol`.
    pub fn diagonal_entries(&self, tol: f64) -> Option<Vec<Complex64>> {
        for i in 0..self.dim {
            for j in 0..self.dim {
                if i != j && self.get(i, j).norm() >= tol {
                    return None;
                }
            }
        }
        Some((0..self.dim).map(|i| self.get(i, i)).collect())
    }

    /// For a monomial matrix (one nonzero entry per column), the row index of
    /// each column's entry and the entry itself.
    pub fn monomial_structure(&self, tol: f64) -> Option<Vec<(usize, Complex64)>> {
        let mut out = Vec::with_capacity(self.dim);
        let mut used = vec![false; self.dim];
        for col in 0..self.dim {
            let rows: Vec<usize> = (0..self.dim)
                .filter(|&r| self.get(r, col).norm() >= tol)
                .collect();
            if rows.len() != 1 || used[rows[0]] {
                return None;
            }
            used[rows[0]] = true;
            out.push((rows[0], self.get(rows[0], col)));
        }
        Some(out)
    }
}

/// Constructors for the single- and two-qudit gates.
#[derive(Clone, Copy, Debug)]
pub struct QuditGates {
    field: PrimeField,
}

impl QuditGates {
    pub fn new(d: u32) -> Result<Self> {
        Ok(QuditGates {
            field: PrimeField::qudit(d)?,
        })
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    fn d(&self) -> u32 {
        self.field.modulus()
    }

    fn permutation(&self, map: impl Fn(u32) -> u32) -> GateMatrix {
        let d = self.d() as usize;
        GateMatrix::from_fn(d, |row, col| {
            if map(col as u32) as usize == row {
                Complex64::new(1.0, 0.0)
            } else {
                Complex64::new(0.0, 0.0)
            }
        })
    }

    /// X|x> = |x+1>.
    pub fn x(&self) -> GateMatrix {
        let f = self.field;
        self.permutation(|x| f.add(x, 1))
    }

    /// Z|x> = ω^x |x>.
    pub fn z(&self) -> GateMatrix {
        self.phase(&PhasePolynomial::z_clifford(self.field, 1, 0))
    }

    /// H|x> = Σ_y ω^{xy} |y> / √d.
    pub fn h(&self) -> GateMatrix {
        let d = self.d();
        let norm = 1.0 / (d as f64).sqrt();
        GateMatrix::from_fn(d as usize, |y, x| {
            omega_pow(d, self.field.mul(x as u32, y as u32)) * norm
        })
    }

    /// C_Z = ω^{n̂ ⊗ n̂}, with basis index x·d + y.
    pub fn cz(&self) -> GateMatrix {
        let d = self.d();
        let entries: Vec<Complex64> = (0..d * d)
            .map(|i| omega_pow(d, self.field.mul(i / d, i % d)))
            .collect();
        GateMatrix::diagonal(&entries)
    }

    /// X_{α,β}|x> = |α + βx>; β must be nonzero.
    pub fn x_affine(&self, alpha: u32, beta: u32) -> Result<GateMatrix> {
        if beta.is_multiple_of(self.d()) {
            return Err(Error::Parameter("X_{α,β} needs β != 0".into()));
        }
        let f = self.field;
        Ok(self.permutation(|x| f.add(alpha % f.modulus(), f.mul(beta % f.modulus(), x))))
    }

    /// Z_{α,β} = ω^{α n̂ + β n̂²}.
    pub fn z_quadratic(&self, alpha: u32, beta: u32) -> GateMatrix {
        self.phase(&PhasePolynomial::z_clifford(self.field, alpha, beta))
    }

    /// M_μ = ω^{μ n̂³}.
    pub fn m(&self, mu: u32) -> GateMatrix {
        self.phase(&PhasePolynomial::m_gate(self.field, mu))
    }

    pub fn phase(&self, p: &PhasePolynomial) -> GateMatrix {
        let d = self.d();
        let entries: Vec<Complex64> = (0..d).map(|x| omega_pow(d, p.eval(x))).collect();
        GateMatrix::diagonal(&entries)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const TOL: f64 = 1e-12;

    #[test]
    fn basic_relations_d5() {
        let g = QuditGates::new(5).unwrap();
        let w = omega_pow(5, 1);
        let zx = g.z().mul(&g.x());
        let xz = g.x().mul(&g.z());
        let scaled = GateMatrix::from_fn(5, |i, j| xz.get(i, j) * w);
        assert!(zx.approx_eq(&scaled, TOL));
        assert!(g.h().pow(4).approx_eq(&GateMatrix::identity(5), 1e-11));
        for mu in 0..5 {
            assert!(g.m(mu).pow(5).approx_eq(&GateMatrix::identity(5), 1e-11));
        }
        assert!(g.x_affine(1, 0).is_err());
    }

    #[test]
    fn all_gates_unitary() {
        for d in [5, 7] {
            let g = QuditGates::new(d).unwrap();
            assert!(g.x().is_unitary(TOL));
            assert!(g.z().is_unitary(TOL));
            assert!(g.h().is_unitary(TOL));
            assert!(g.cz().is_unitary(TOL));
            for a in 0..d {
                for b in 0..d {
                    assert!(g.z_quadratic(a, b).is_unitary(TOL));
                    if b != 0 {
                        assert!(g.x_affine(a, b).unwrap().is_unitary(TOL));
                    }
                }
                assert!(g.m(a).is_unitary(TOL));
            }
        }
    }

    #[test]
    fn pauli_x_is_affine_unit() {
        let g = QuditGates::new(7).unwrap();
        assert!(g.x_affine(1, 1).unwrap().approx_eq(&g.x(), TOL));
        assert!(g.z_quadratic(1, 0).approx_eq(&g.z(), TOL));
    }

    #[test]
    fn exponent_recovery() {
        for k in 0..7 {
            assert_eq!(root_of_unity_exponent(7, omega_pow(7, k), 1e-9), Some(k));
        }
        assert_eq!(root_of_unity_exponent(7, Complex64::new(0.5, 0.0), 1e-9), None);
    }
}
