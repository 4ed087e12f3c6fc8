//! Polynomial functions F: F_d^* -> F_d.
//!
//! Because the domain excludes zero, x^(d-1) = 1 everywhere on it, so every
//! function has a unique representative with exponents in `0..=d-2`. All
//! [`Polynomial`] values are kept in that canonical form.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::PrimeField;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Polynomial {
    field: PrimeField,
    coeffs: Vec<u32>,
}

/// The tuple (F(1), ..., F(d-1)).
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct EvaluationVector {
    field: PrimeField,
    values: Vec<u32>,
}

fn check_same(a: PrimeField, b: PrimeField) {
    assert_eq!(a.modulus(), b.modulus(), "polynomials over different fields");
}

impl Polynomial {
    pub fn zero(field: PrimeField) -> Self {
        Polynomial {
            field,
            coeffs: vec![0; field.modulus() as usize - 1],
        }
    }

    pub fn constant(field: PrimeField, c: u32) -> Self {
        let mut p = Self::zero(field);
        p.coeffs[0] = c % field.modulus();
        p
    }

    pub fn monomial(field: PrimeField, exponent: u64, c: u32) -> Self {
        Self::reduce_flt(field, [(exponent, c)])
    }

    /// Builds a polynomial from `coeffs[m]` = coefficient of x^m. Longer
    /// inputs are folded with [`Polynomial::reduce_flt`].
    pub fn from_coeffs(field: PrimeField, coeffs: &[u32]) -> Self {
        Self::reduce_flt(field, coeffs.iter().enumerate().map(|(m, &c)| (m as u64, c)))
    }

    /// Folds arbitrary exponents onto `0..=d-2` using x^(d-1) = 1 on F_d^*,
    /// summing coefficients that land on the same exponent.
    pub fn reduce_flt(field: PrimeField, raw: impl IntoIterator<Item = (u64, u32)>) -> Self {
        let period = field.modulus() as u64 - 1;
        let mut p = Self::zero(field);
        for (exponent, c) in raw {
            let slot = (exponent % period) as usize;
            p.coeffs[slot] = field.add(p.coeffs[slot], c % field.modulus());
        }
        p
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn coeffs(&self) -> &[u32] {
        &self.coeffs
    }

    pub fn coeff(&self, m: usize) -> u32 {
        self.coeffs[m]
    }

    /// Largest exponent with a nonzero coefficient; 0 for the zero polynomial.
    pub fn degree(&self) -> usize {
        self.coeffs.iter().rposition(|&c| c != 0).unwrap_or(0)
    }

    pub fn shift(&self) -> u32 {
        self.coeffs[0]
    }

    pub fn is_unshifted(&self) -> bool {
        self.coeffs[0] == 0
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    pub fn eval_at(&self, x: u32) -> u32 {
        let f = self.field;
        self.coeffs
            .iter()
            .rev()
            .fold(0, |acc, &c| f.add(f.mul(acc, x), c))
    }

    pub fn evaluate(&self) -> EvaluationVector {
        EvaluationVector {
            field: self.field,
            values: self.field.nonzero().map(|x| self.eval_at(x)).collect(),
        }
    }

    pub fn add(&self, other: &Polynomial) -> Polynomial {
        check_same(self.field, other.field);
        let f = self.field;
        Polynomial {
            field: f,
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(&a, &b)| f.add(a, b))
                .collect(),
        }
    }

    pub fn scale(&self, c: u32) -> Polynomial {
        let f = self.field;
        Polynomial {
            field: f,
            coeffs: self.coeffs.iter().map(|&a| f.mul(a, c % f.modulus())).collect(),
        }
    }

    /// Product of functions on F_d^*, folded back to canonical form.
    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        check_same(self.field, other.field);
        let f = self.field;
        let period = f.modulus() as usize - 1;
        let mut out = vec![0u32; period];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                if b == 0 {
                    continue;
                }
                let slot = (i + j) % period;
                out[slot] = f.add(out[slot], f.mul(a, b));
            }
        }
        Polynomial {
            field: f,
            coeffs: out,
        }
    }

    pub fn cube(&self) -> Polynomial {
        self.mul(self).mul(self)
    }

    /// S(H) = sum of H(x) over x in F_d^*, via the closed form S(H) = -h_0.
    ///
    /// Debug builds also sum directly and fail on disagreement.
    pub fn power_sum(&self) -> Result<u32> {
        let closed = self.field.neg(self.coeffs[0]);
        if cfg!(debug_assertions) {
            let direct = self.power_sum_direct();
            if direct != closed {
                return Err(Error::Consistency(format!(
                    "power sum of {self}: closed form {closed}, direct {direct}"
                )));
            }
        }
        Ok(closed)
    }

    pub fn power_sum_direct(&self) -> u32 {
        let f = self.field;
        f.nonzero().fold(0, |acc, x| f.add(acc, self.eval_at(x)))
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms = Vec::new();
        for (m, &c) in self.coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let term = match (m, c) {
                (0, _) => c.to_string(),
                (1, 1) => "x".to_string(),
                (1, _) => format!("{c}x"),
                (_, 1) => format!("x^{m}"),
                _ => format!("{c}x^{m}"),
            };
            terms.push(term);
        }
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join(" + "))
        }
    }
}

impl EvaluationVector {
    pub fn new(field: PrimeField, values: Vec<u32>) -> Result<Self> {
        let n = field.modulus() as usize - 1;
        if values.len() != n {
            return Err(Error::LengthMismatch {
                expected: n,
                got: values.len(),
            });
        }
        let values = values.into_iter().map(|v| v % field.modulus()).collect();
        Ok(EvaluationVector { field, values })
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn values(&self) -> &[u32] {
        &self.values
    }

    pub fn into_values(self) -> Vec<u32> {
        self.values
    }

    /// Number of nonzero entries.
    pub fn weight(&self) -> usize {
        self.values.iter().filter(|&&v| v != 0).count()
    }

    pub fn sum(&self) -> u32 {
        let f = self.field;
        self.values.iter().fold(0, |acc, &v| f.add(acc, v))
    }

    /// Unique polynomial of degree <= d-2 with these values.
    ///
    /// Uses f_m = -sum_x v(x) x^(-m), which follows from the power sums of
    /// monomials over F_d^*.
    pub fn interpolate(&self) -> Polynomial {
        let f = self.field;
        let period = f.modulus() as u64 - 1;
        let mut coeffs = vec![0u32; period as usize];
        for (i, &v) in self.values.iter().enumerate() {
            if v == 0 {
                continue;
            }
            let x = i as u32 + 1;
            let x_inv = f.pow(x, period - 1);
            let mut p = 1;
            for c in coeffs.iter_mut() {
                *c = f.add(*c, f.mul(v, p));
                p = f.mul(p, x_inv);
            }
        }
        for c in coeffs.iter_mut() {
            *c = f.neg(*c);
        }
        Polynomial { field: f, coeffs }
    }
}
