use num_complex::Complex64;

use crate::code::PauliOperator;
use crate::error::{Error, Result};
use crate::oracle::matrix::{omega_pow, GateMatrix};

/// Largest register the dense simulator will allocate (7^6 amplitudes).
pub const MAX_STATE_DIM: usize = 117_649;

/// Dense n-qudit state. Basis index Σ_i v_i d^{n-1-i}, so qudit 0 is the
/// most significant digit.
#[derive(Clone, Debug, PartialEq)]
pub struct StateVector {
    d: u32,
    n: usize,
    amps: Vec<Complex64>,
}

/// Walks basis digits in index order.
struct Digits {
    d: u32,
    digits: Vec<u32>,
}

impl Digits {
    fn new(d: u32, n: usize) -> Self {
        Digits {
            d,
            digits: vec![0; n],
        }
    }

    fn advance(&mut self) {
        for v in self.digits.iter_mut().rev() {
            *v += 1;
            if *v < self.d {
                return;
            }
            *v = 0;
        }
    }
}

impl StateVector {
    pub fn zeros(d: u32, n: usize) -> Result<Self> {
        let dim = (d as usize).checked_pow(n as u32).unwrap_or(usize::MAX);
        if dim > MAX_STATE_DIM {
            return Err(Error::capacity("state vector", dim as f64, MAX_STATE_DIM as f64));
        }
        Ok(StateVector {
            d,
            n,
            amps: vec![Complex64::new(0.0, 0.0); dim],
        })
    }

    /// ⊗_i sites[i].
    pub fn product(d: u32, sites: &[Vec<Complex64>]) -> Result<Self> {
        let mut state = Self::zeros(d, sites.len())?;
        let mut digits = Digits::new(d, sites.len());
        for amp in state.amps.iter_mut() {
            *amp = digits
                .digits
                .iter()
                .zip(sites)
                .map(|(&v, site)| site[v as usize])
                .product();
            digits.advance();
        }
        Ok(state)
    }

    pub fn d(&self) -> u32 {
        self.d
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn index_of(&self, digits: &[u32]) -> usize {
        digits
            .iter()
            .fold(0, |acc, &v| acc * self.d as usize + v as usize)
    }

    pub fn amplitude(&self, digits: &[u32]) -> Complex64 {
        self.amps[self.index_of(digits)]
    }

    pub fn add_to(&mut self, digits: &[u32], amp: Complex64) {
        let i = self.index_of(digits);
        self.amps[i] += amp;
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.iter().map(Complex64::norm_sqr).sum()
    }

    pub fn is_normalized(&self, tol: f64) -> bool {
        (self.norm_sqr().sqrt() - 1.0).abs() < tol
    }

    /// <self|other>.
    pub fn inner(&self, other: &StateVector) -> Complex64 {
        self.amps.iter().zip(&other.amps).map(|(a, b)| a.conj() * b).sum()
    }

    pub fn scaled(&self, c: Complex64) -> StateVector {
        StateVector {
            d: self.d,
            n: self.n,
            amps: self.amps.iter().map(|a| a * c).collect(),
        }
    }

    pub fn max_abs_diff(&self, other: &StateVector) -> f64 {
        self.amps
            .iter()
            .zip(&other.amps)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    pub fn apply_single(&mut self, gate: &GateMatrix, site: usize) {
        let d = self.d as usize;
        let stride = d.pow((self.n - 1 - site) as u32);
        let block = stride * d;
        let mut scratch = vec![Complex64::new(0.0, 0.0); d];
        for base in (0..self.amps.len()).step_by(block) {
            for offset in 0..stride {
                for (v, s) in scratch.iter_mut().enumerate() {
                    *s = self.amps[base + offset + v * stride];
                }
                for row in 0..d {
                    self.amps[base + offset + row * stride] =
                        (0..d).map(|col| gate.get(row, col) * scratch[col]).sum();
                }
            }
        }
    }

    /// Multiplies |v> by Π_i phases[v_i], i.e. applies the same diagonal
    /// gate to every qudit.
    pub fn apply_transversal_diagonal(&mut self, phases: &[Complex64]) {
        let mut digits = Digits::new(self.d, self.n);
        for amp in self.amps.iter_mut() {
            let p: Complex64 = digits.digits.iter().map(|&v| phases[v as usize]).product();
            *amp *= p;
            digits.advance();
        }
    }

    /// Applies ⊗_i X^{k x_i} Z^{k z_i}: |v> -> ω^{k Σ z_i v_i} |v + k x>.
    pub fn apply_pauli_power(&mut self, p: &PauliOperator, k: u32) {
        let d = self.d;
        let shift: Vec<u32> = p.x_part().iter().map(|&x| (x * k) % d).collect();
        let phase: Vec<u32> = p.z_part().iter().map(|&z| (z * k) % d).collect();
        let mut out = vec![Complex64::new(0.0, 0.0); self.amps.len()];
        let mut digits = Digits::new(d, self.n);
        let mut target = vec![0u32; self.n];
        for amp in &self.amps {
            let mut e = 0;
            for i in 0..self.n {
                e += phase[i] * digits.digits[i];
                target[i] = (digits.digits[i] + shift[i]) % d;
            }
            let idx = self.index_of(&target);
            out[idx] = amp * omega_pow(d, e % d);
            digits.advance();
        }
        self.amps = out;
    }

    /// Projects onto the ω^s eigenspace of a pure X- or Z-type Pauli:
    /// (1/d) Σ_j ω^{-js} P^j.
    pub fn project_eigenspace(&mut self, p: &PauliOperator, s: u32) -> Result<()> {
        let pure = p.x_part().iter().all(|&v| v == 0) || p.z_part().iter().all(|&v| v == 0);
        if !pure {
            return Err(Error::Parameter(
                "projector needs a pure X- or Z-type generator".into(),
            ));
        }
        let d = self.d;
        let mut acc = vec![Complex64::new(0.0, 0.0); self.amps.len()];
        for j in 0..d {
            let mut term = self.clone();
            term.apply_pauli_power(p, j);
            let c = omega_pow(d, d - (j * s) % d) / d as f64;
            for (a, t) in acc.iter_mut().zip(&term.amps) {
                *a += t * c;
            }
        }
        self.amps = acc;
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeField;
    use crate::oracle::matrix::QuditGates;

    #[test]
    fn single_site_gate_matches_pauli() {
        let f = PrimeField::new(5).unwrap();
        let g = QuditGates::new(5).unwrap();
        let plus: Vec<Complex64> = (0..5).map(|k| omega_pow(5, k) / 5f64.sqrt()).collect();
        let sites = vec![plus.clone(), plus.clone(), plus];
        let mut a = StateVector::product(5, &sites).unwrap();
        let mut b = a.clone();
        a.apply_single(&g.x(), 1);
        a.apply_single(&g.z(), 2);
        let p = PauliOperator::new(f, vec![0, 1, 0], vec![0, 0, 1]).unwrap();
        b.apply_pauli_power(&p, 1);
        assert!(a.max_abs_diff(&b) < 1e-12);
        assert!(a.is_normalized(1e-12));
    }

    #[test]
    fn projector_is_idempotent() {
        let f = PrimeField::new(5).unwrap();
        let sites: Vec<Vec<Complex64>> = (0..3)
            .map(|i| {
                (0..5)
                    .map(|k| Complex64::new(1.0 + (i * k) as f64, k as f64))
                    .collect()
            })
            .collect();
        let mut s = StateVector::product(5, &sites).unwrap();
        let p = PauliOperator::new(f, vec![1, 2, 3], vec![0; 3]).unwrap();
        s.project_eigenspace(&p, 2).unwrap();
        let mut t = s.clone();
        t.project_eigenspace(&p, 2).unwrap();
        assert!(s.max_abs_diff(&t) < 1e-12);
        let mixed = PauliOperator::new(f, vec![1, 0, 0], vec![0, 1, 0]).unwrap();
        assert!(s.project_eigenspace(&mixed, 0).is_err());
    }

    #[test]
    fn capacity_guard() {
        assert!(StateVector::zeros(7, 6).is_ok());
        assert!(StateVector::zeros(11, 10).unwrap_err().is_capacity());
    }
}
