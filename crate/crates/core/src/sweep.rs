//! Incremental walk over coefficient vectors in base d.
//!
//! Index `i` maps to digits `c_j` with `i = sum_j c_j d^j`. Each digit owns a
//! basis vector; the walker maintains `values = sum_j c_j * basis_j` mod d.
//! Bumping a digit by one (including the wrap d-1 -> 0) always adds its basis
//! vector once, so a step costs one vector add per changed digit.

use crate::field::PrimeField;

pub(crate) struct Sweep<'a> {
    field: PrimeField,
    basis: &'a [Vec<u32>],
    digits: Vec<u32>,
    values: Vec<u32>,
}

impl<'a> Sweep<'a> {
    pub(crate) fn new(field: PrimeField, basis: &'a [Vec<u32>], len: usize, start: u64) -> Self {
        let d = field.modulus() as u64;
        let mut digits = Vec::with_capacity(basis.len());
        let mut rest = start;
        for _ in 0..basis.len() {
            digits.push((rest % d) as u32);
            rest /= d;
        }
        let mut values = vec![0u32; len];
        for (digit, b) in digits.iter().zip(basis) {
            for (v, &e) in values.iter_mut().zip(b) {
                *v = field.add(*v, field.mul(*digit, e));
            }
        }
        Sweep {
            field,
            basis,
            digits,
            values,
        }
    }

    #[inline]
    pub(crate) fn values(&self) -> &[u32] {
        &self.values
    }

    #[inline]
    pub(crate) fn digits(&self) -> &[u32] {
        &self.digits
    }

    pub(crate) fn step(&mut self) {
        let d = self.field.modulus();
        for j in 0..self.digits.len() {
            let b = &self.basis[j];
            for (v, &e) in self.values.iter_mut().zip(b) {
                let s = *v + e;
                *v = if s >= d { s - d } else { s };
            }
            self.digits[j] += 1;
            if self.digits[j] < d {
                return;
            }
            self.digits[j] = 0;
        }
    }
}

/// Basis vectors `x -> x^m` on F_d^* for each exponent in `exponents`.
pub(crate) fn monomial_basis(field: PrimeField, exponents: impl IntoIterator<Item = u64>) -> Vec<Vec<u32>> {
    exponents
        .into_iter()
        .map(|m| field.nonzero().map(|x| field.pow(x, m)).collect())
        .collect()
}
