//! Arithmetic in the prime field F_d.
//!
//! Elements are plain `u32` values in `0..d`; the modulus lives in
//! [`PrimeField`], which every containing structure carries.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut p = 2u32;
    while p * p <= n {
        if n.is_multiple_of(p) {
            return false;
        }
        p += 1;
    }
    true
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PrimeField {
    d: u32,
}

impl PrimeField {
    /// Any prime modulus. Qudit-level constructions additionally call
    /// [`PrimeField::qudit`], which rejects d < 5.
    pub fn new(d: u32) -> Result<Self> {
        if !is_prime(d) {
            return Err(Error::NotPrime(d));
        }
        if d > u16::MAX as u32 {
            return Err(Error::Parameter(format!("modulus {d} too large")));
        }
        Ok(PrimeField { d })
    }

    /// A field suitable for the qudit codes: prime and at least 5.
    pub fn qudit(d: u32) -> Result<Self> {
        let field = Self::new(d)?;
        field.require_qudit()?;
        Ok(field)
    }

    pub fn require_qudit(&self) -> Result<()> {
        if self.d < 5 {
            Err(Error::UnsupportedDimension(self.d))
        } else {
            Ok(())
        }
    }

    #[inline]
    pub fn modulus(&self) -> u32 {
        self.d
    }

    #[inline]
    pub fn reduce(&self, a: u64) -> u32 {
        (a % self.d as u64) as u32
    }

    #[inline]
    pub fn reduce_signed(&self, a: i64) -> u32 {
        a.rem_euclid(self.d as i64) as u32
    }

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        let s = a + b;
        if s >= self.d {
            s - self.d
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(&self, a: u32, b: u32) -> u32 {
        if a >= b {
            a - b
        } else {
            a + self.d - b
        }
    }

    #[inline]
    pub fn neg(&self, a: u32) -> u32 {
        if a == 0 {
            0
        } else {
            self.d - a
        }
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        (a * b) % self.d
    }

    pub fn pow(&self, base: u32, mut exp: u64) -> u32 {
        let mut result = 1 % self.d;
        let mut b = base % self.d;
        while exp > 0 {
            if exp & 1 == 1 {
                result = self.mul(result, b);
            }
            b = self.mul(b, b);
            exp >>= 1;
        }
        result
    }

    pub fn inv(&self, a: u32) -> Result<u32> {
        let a = a % self.d;
        if a == 0 {
            return Err(Error::ZeroInverse);
        }
        Ok(self.pow(a, (self.d - 2) as u64))
    }

    pub fn elements(&self) -> impl Iterator<Item = u32> {
        0..self.d
    }

    /// The multiplicative group F_d^*, i.e. the evaluation domain `1..d`.
    pub fn nonzero(&self) -> impl Iterator<Item = u32> {
        1..self.d
    }

    /// `table[x - 1][m] = x^m` for x in F_d^* and m in `0..d-1`.
    pub fn power_table(&self) -> Vec<Vec<u32>> {
        self.nonzero()
            .map(|x| {
                let mut row = Vec::with_capacity(self.d as usize - 1);
                let mut p = 1;
                for _ in 0..self.d - 1 {
                    row.push(p);
                    p = self.mul(p, x);
                }
                row
            })
            .collect()
    }
}

/// The nonzero cubes of F_d.
pub fn cubic_residues(field: PrimeField) -> Result<BTreeSet<u32>> {
    field.require_qudit()?;
    Ok(field.nonzero().map(|b| field.pow(b, 3)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverse_of_three_mod_seven() {
        let f = PrimeField::new(7).unwrap();
        assert_eq!(f.inv(3).unwrap(), 5);
        assert_eq!(f.mul(3, 5), 1);
    }

    #[test]
    fn fermat_little_theorem() {
        let f = PrimeField::new(5).unwrap();
        assert_eq!(f.pow(2, 4), 1);
        for d in [5, 7, 11, 13, 17] {
            let f = PrimeField::new(d).unwrap();
            for a in f.nonzero() {
                assert_eq!(f.pow(a, (d - 1) as u64), 1);
            }
        }
    }

    #[test]
    fn additive_identity_and_inverse() {
        let f = PrimeField::new(13).unwrap();
        for a in f.elements() {
            assert_eq!(f.add(a, 0), a);
            assert_eq!(f.add(a, f.neg(a)), 0);
            assert_eq!(f.sub(a, a), 0);
        }
    }

    #[test]
    fn inverting_zero_fails() {
        let f = PrimeField::new(11).unwrap();
        assert_eq!(f.inv(0), Err(Error::ZeroInverse));
        for a in f.nonzero() {
            assert_eq!(f.mul(a, f.inv(a).unwrap()), 1);
        }
    }

    #[test]
    fn rejects_bad_moduli() {
        assert_eq!(PrimeField::new(9), Err(Error::NotPrime(9)));
        assert_eq!(PrimeField::qudit(3), Err(Error::UnsupportedDimension(3)));
        assert!(PrimeField::new(3).is_ok());
        assert!(PrimeField::qudit(17).is_ok());
    }

    #[test]
    fn cubic_residues_small_cases() {
        let r7 = cubic_residues(PrimeField::new(7).unwrap()).unwrap();
        assert_eq!(r7.into_iter().collect::<Vec<_>>(), vec![1, 6]);
        let r5 = cubic_residues(PrimeField::new(5).unwrap()).unwrap();
        assert_eq!(r5.into_iter().collect::<Vec<_>>(), vec![1, 2, 3, 4]);
        for d in [5, 7, 11, 13, 17] {
            let r = cubic_residues(PrimeField::new(d).unwrap()).unwrap();
            let expected = if d % 3 == 2 { d - 1 } else { (d - 1) / 3 };
            assert_eq!(r.len() as u32, expected, "d = {d}");
        }
    }

    #[test]
    fn cubic_residues_form_a_group() {
        for d in [5, 7, 11, 13, 17] {
            let f = PrimeField::new(d).unwrap();
            let r = cubic_residues(f).unwrap();
            assert!(r.contains(&1));
            for &a in &r {
                assert!(r.contains(&f.inv(a).unwrap()));
                for &b in &r {
                    assert!(r.contains(&f.mul(a, b)));
                }
            }
        }
    }
}
