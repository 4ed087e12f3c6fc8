//! Shortened quantum Reed-Muller codes on n = d - 1 qudits.
//!
//! Qudit `x - 1` carries the value F(x) of the polynomial describing a basis
//! state. The stabilizer is generated by X_F for the monomials F = x^m,
//! m = 1..=r, and Z_G for G = x^m, m = 1..=d-2-r. Logical X is X^{⊗n} (the
//! constant function 1) and logical Z is (Z^{-1})^{⊗n} (the constant -1),
//! which acts on |k_L> as ω^k.

use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exec::{self, Execution};
use crate::field::PrimeField;
use crate::poly::{EvaluationVector, Polynomial};
use crate::sweep::{monomial_basis, Sweep};

/// Phase-free Pauli operator ⊗_i X^{x_i} Z^{z_i}.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PauliOperator {
    field: PrimeField,
    x: Vec<u32>,
    z: Vec<u32>,
}

impl PauliOperator {
    pub fn new(field: PrimeField, x: Vec<u32>, z: Vec<u32>) -> Result<Self> {
        if x.len() != z.len() {
            return Err(Error::LengthMismatch {
                expected: x.len(),
                got: z.len(),
            });
        }
        let d = field.modulus();
        Ok(PauliOperator {
            field,
            x: x.into_iter().map(|v| v % d).collect(),
            z: z.into_iter().map(|v| v % d).collect(),
        })
    }

    pub fn identity(field: PrimeField, n: usize) -> Self {
        PauliOperator {
            field,
            x: vec![0; n],
            z: vec![0; n],
        }
    }

    /// X_F = X^{F(1)} ⊗ ... ⊗ X^{F(d-1)}.
    pub fn x_type(values: &EvaluationVector) -> Self {
        let n = values.values().len();
        PauliOperator {
            field: values.field(),
            x: values.values().to_vec(),
            z: vec![0; n],
        }
    }

    /// Z_G = ⊗_x Z^{G(x)}.
    pub fn z_type(values: &EvaluationVector) -> Self {
        let n = values.values().len();
        PauliOperator {
            field: values.field(),
            x: vec![0; n],
            z: values.values().to_vec(),
        }
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn len(&self) -> usize {
        self.x.len()
    }

    pub fn is_empty(&self) -> bool {
        self.x.is_empty()
    }

    pub fn x_part(&self) -> &[u32] {
        &self.x
    }

    pub fn z_part(&self) -> &[u32] {
        &self.z
    }

    pub fn weight(&self) -> usize {
        self.x
            .iter()
            .zip(&self.z)
            .filter(|(&a, &b)| a != 0 || b != 0)
            .count()
    }

    /// σ(P, Q) = Σ_i (P.x_i Q.z_i - P.z_i Q.x_i) mod d.
    pub fn symplectic(&self, other: &PauliOperator) -> Result<u32> {
        if self.len() != other.len() {
            return Err(Error::LengthMismatch {
                expected: self.len(),
                got: other.len(),
            });
        }
        if self.field != other.field {
            return Err(Error::ModulusMismatch(
                self.field.modulus(),
                other.field.modulus(),
            ));
        }
        let f = self.field;
        let mut acc = 0;
        for i in 0..self.len() {
            acc = f.add(acc, f.mul(self.x[i], other.z[i]));
            acc = f.sub(acc, f.mul(self.z[i], other.x[i]));
        }
        Ok(acc)
    }

    pub fn commutes_with(&self, other: &PauliOperator) -> Result<bool> {
        Ok(self.symplectic(other)? == 0)
    }

    /// Product up to phase.
    pub fn compose(&self, other: &PauliOperator) -> PauliOperator {
        let f = self.field;
        PauliOperator {
            field: f,
            x: self.x.iter().zip(&other.x).map(|(&a, &b)| f.add(a, b)).collect(),
            z: self.z.iter().zip(&other.z).map(|(&a, &b)| f.add(a, b)).collect(),
        }
    }

    /// P^k up to phase.
    pub fn power(&self, k: u32) -> PauliOperator {
        let f = self.field;
        PauliOperator {
            field: f,
            x: self.x.iter().map(|&a| f.mul(a, k % f.modulus())).collect(),
            z: self.z.iter().map(|&a| f.mul(a, k % f.modulus())).collect(),
        }
    }
}

/// Result of classifying a Z-type error against the code.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ZErrorClass {
    pub detected: bool,
    /// Power of logical Z the error implements when undetected.
    pub class: u32,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FullDistance {
    pub distance: usize,
    pub x_only: usize,
    pub z_only: usize,
}

/// Above this many coefficient vectors `z_distance` switches to the
/// explicit-witness argument.
pub const Z_DISTANCE_ENUM_LIMIT: u64 = 50_000_000;
pub const FULL_DISTANCE_LIMIT: u64 = 10_000_000;
pub const SUPPORT_LIMIT: u64 = 50_000_000;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QrmCode {
    field: PrimeField,
    r: u32,
    x_stabilizers: Vec<PauliOperator>,
    z_stabilizers: Vec<PauliOperator>,
    logical_x: PauliOperator,
    logical_z: PauliOperator,
}

impl QrmCode {
    pub fn new(d: u32, r: u32) -> Result<Self> {
        let field = PrimeField::qudit(d)?;
        Self::with_field(field, r)
    }

    pub fn with_field(field: PrimeField, r: u32) -> Result<Self> {
        field.require_qudit()?;
        let d = field.modulus();
        if r < 1 || r > d - 3 {
            return Err(Error::DegreeOutOfRange { d, r, max: d - 3 });
        }
        let n = (d - 1) as usize;
        let monomial = |m: u32| Polynomial::monomial(field, m as u64, 1).evaluate();
        let x_stabilizers = (1..=r).map(|m| PauliOperator::x_type(&monomial(m))).collect();
        let z_stabilizers = (1..=d - 2 - r)
            .map(|m| PauliOperator::z_type(&monomial(m)))
            .collect();
        let logical_x = PauliOperator::new(field, vec![1; n], vec![0; n])?;
        let logical_z = PauliOperator::new(field, vec![0; n], vec![d - 1; n])?;
        Ok(QrmCode {
            field,
            r,
            x_stabilizers,
            z_stabilizers,
            logical_x,
            logical_z,
        })
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn d(&self) -> u32 {
        self.field.modulus()
    }

    pub fn r(&self) -> u32 {
        self.r
    }

    pub fn n(&self) -> usize {
        self.d() as usize - 1
    }

    /// Highest degree of an undetected Z-error polynomial: d - 2 - r.
    pub fn max_z_degree(&self) -> usize {
        (self.d() - 2 - self.r) as usize
    }

    /// The distance the construction guarantees, r + 1.
    pub fn design_distance(&self) -> usize {
        self.r as usize + 1
    }

    /// Whether 3r < d - 1, the condition for the transversal M gate.
    pub fn supports_transversal_m(&self) -> bool {
        3 * self.r < self.d() - 1
    }

    pub fn x_stabilizers(&self) -> &[PauliOperator] {
        &self.x_stabilizers
    }

    pub fn z_stabilizers(&self) -> &[PauliOperator] {
        &self.z_stabilizers
    }

    pub fn generators(&self) -> impl Iterator<Item = &PauliOperator> {
        self.x_stabilizers.iter().chain(&self.z_stabilizers)
    }

    pub fn logical_x(&self) -> &PauliOperator {
        &self.logical_x
    }

    pub fn logical_z(&self) -> &PauliOperator {
        &self.logical_z
    }

    /// Symplectic products with each generator, X-type generators first.
    pub fn syndrome(&self, p: &PauliOperator) -> Result<Vec<u32>> {
        if p.len() != self.n() {
            return Err(Error::LengthMismatch {
                expected: self.n(),
                got: p.len(),
            });
        }
        self.generators().map(|g| g.symplectic(p)).collect()
    }

    /// Classifies the error ⊗_x Z^{e(x)}: it is undetected iff its
    /// interpolating polynomial has degree <= d-2-r, and then it acts as
    /// logical Z^m with m = Σ_x e(x).
    pub fn logical_class_of_z_error(&self, e: &[u32]) -> Result<ZErrorClass> {
        let values = EvaluationVector::new(self.field, e.to_vec())?;
        let detected = values.interpolate().degree() > self.max_z_degree();
        Ok(ZErrorClass {
            detected,
            class: values.sum(),
        })
    }

    /// Evaluation vectors of every F with deg(F) <= r and shift k; these
    /// are the basis states in the superposition |k_L>.
    pub fn logical_state_support(&self, k: u32) -> Result<Vec<EvaluationVector>> {
        let d = self.d() as u64;
        let total = d.pow(self.r);
        if total > SUPPORT_LIMIT {
            return Err(Error::capacity(
                "logical state support",
                total as f64,
                SUPPORT_LIMIT as f64,
            ));
        }
        let f = self.field;
        let basis = monomial_basis(f, 1..=self.r as u64);
        let mut sweep = Sweep::new(f, &basis, self.n(), 0);
        let shift = k % self.d();
        let mut out = Vec::with_capacity(total as usize);
        for _ in 0..total {
            let values = sweep.values().iter().map(|&v| f.add(v, shift)).collect();
            out.push(EvaluationVector::new(f, values)?);
            sweep.step();
        }
        Ok(out)
    }

    /// Minimum weight of an undetected Z error outside the stabilizer.
    pub fn z_distance(&self) -> Result<usize> {
        self.z_distance_with(Execution::default())
    }

    pub fn z_distance_with(&self, exec: Execution) -> Result<usize> {
        let total = (self.d() as u64).pow(self.max_z_degree() as u32 + 1);
        if total <= Z_DISTANCE_ENUM_LIMIT {
            self.z_distance_enumerated(exec)
        } else {
            self.z_distance_witness().map(|(w, _)| w)
        }
    }

    /// Enumerates all undetected Z errors, i.e. every coefficient vector
    /// (g_0, ..., g_{d-2-r}), and minimizes the weight over those with
    /// g_0 != 0.
    pub fn z_distance_enumerated(&self, exec: Execution) -> Result<usize> {
        let d = self.d() as u64;
        let digits = self.max_z_degree() + 1;
        let total = d.pow(digits as u32);
        if total > Z_DISTANCE_ENUM_LIMIT {
            return Err(Error::capacity(
                "z-distance enumeration",
                total as f64,
                Z_DISTANCE_ENUM_LIMIT as f64,
            ));
        }
        let f = self.field;
        let n = self.n();
        let basis = monomial_basis(f, 0..digits as u64);
        let best = exec::fold_chunks(
            exec,
            exec::chunk_ranges(total, exec::chunk_len(total, d)),
            || usize::MAX,
            |best, range| {
                let mut sweep = Sweep::new(f, &basis, n, range.start);
                for _ in range {
                    if sweep.digits()[0] != 0 {
                        let w = sweep.values().iter().filter(|&&v| v != 0).count();
                        *best = (*best).min(w);
                    }
                    sweep.step();
                }
            },
            usize::min,
        );
        if best == usize::MAX {
            return Err(Error::Consistency("no logical Z error found".into()));
        }
        Ok(best)
    }

    /// Exhibits G = Π_{a=1}^{d-2-r} (x - a), an undetected shifted error of
    /// weight r + 1, and pairs it with the bound wt(Z_G) >= (d-1) - deg(G),
    /// which holds because a nonzero G has at most deg(G) roots.
    pub fn z_distance_witness(&self) -> Result<(usize, Polynomial)> {
        let f = self.field;
        let mut g = Polynomial::constant(f, 1);
        for a in 1..=self.max_z_degree() as u32 {
            let factor = Polynomial::from_coeffs(f, &[f.neg(a), 1]);
            g = g.mul(&factor);
        }
        let values = g.evaluate();
        let class = self.logical_class_of_z_error(values.values())?;
        let syndrome = self.syndrome(&PauliOperator::z_type(&values))?;
        if class.detected || syndrome.iter().any(|&s| s != 0) || g.is_unshifted() {
            return Err(Error::Consistency(format!(
                "distance witness {g} is not an undetected logical error"
            )));
        }
        let weight = values.weight();
        let lower_bound = self.n() - self.max_z_degree();
        if weight != lower_bound {
            return Err(Error::Consistency(format!(
                "witness weight {weight} does not meet lower bound {lower_bound}"
            )));
        }
        Ok((weight, g))
    }

    /// Exact distance over every Pauli operator, plus the X-only and Z-only
    /// minima. Feasible for d = 5 only.
    pub fn full_distance_bruteforce(&self) -> Result<FullDistance> {
        let d = self.d() as u64;
        let n = self.n();
        let total = d.pow(2 * n as u32);
        if total > FULL_DISTANCE_LIMIT {
            return Err(Error::capacity(
                "full distance enumeration",
                total as f64,
                FULL_DISTANCE_LIMIT as f64,
            ));
        }
        let f = self.field;
        let encode = |p: &PauliOperator| -> u64 {
            p.x_part()
                .iter()
                .chain(p.z_part())
                .rev()
                .fold(0u64, |acc, &v| acc * d + v as u64)
        };

        // Span of the generators, as encoded symplectic vectors.
        let gens: Vec<&PauliOperator> = self.generators().collect();
        let mut stabilizers = HashSet::new();
        let group_size = d.pow(gens.len() as u32);
        for idx in 0..group_size {
            let mut rest = idx;
            let mut acc = PauliOperator::identity(f, n);
            for g in &gens {
                acc = acc.compose(&g.power((rest % d) as u32));
                rest /= d;
            }
            stabilizers.insert(encode(&acc));
        }

        let mut best = FullDistance {
            distance: usize::MAX,
            x_only: usize::MAX,
            z_only: usize::MAX,
        };
        let mut digits = vec![0u32; 2 * n];
        for idx in 1..total {
            let mut rest = idx;
            for v in digits.iter_mut() {
                *v = (rest % d) as u32;
                rest /= d;
            }
            let (xs, zs) = digits.split_at(n);
            let commutes = gens.iter().all(|g| {
                let mut acc = 0;
                for i in 0..n {
                    acc = f.add(acc, f.mul(g.x_part()[i], zs[i]));
                    acc = f.sub(acc, f.mul(g.z_part()[i], xs[i]));
                }
                acc == 0
            });
            if !commutes || stabilizers.contains(&idx) {
                continue;
            }
            let w = (0..n).filter(|&i| xs[i] != 0 || zs[i] != 0).count();
            best.distance = best.distance.min(w);
            if zs.iter().all(|&v| v == 0) {
                best.x_only = best.x_only.min(w);
            }
            if xs.iter().all(|&v| v == 0) {
                best.z_only = best.z_only.min(w);
            }
        }
        Ok(best)
    }
}

/// Rank over F_d of the rows, by Gaussian elimination.
pub fn rank_mod(field: PrimeField, rows: &[Vec<u32>]) -> usize {
    let mut m: Vec<Vec<u32>> = rows.to_vec();
    let cols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..cols {
        let Some(pivot) = (rank..m.len()).find(|&i| m[i][col] != 0) else {
            continue;
        };
        m.swap(rank, pivot);
        let inv = field.inv(m[rank][col]).expect("pivot is nonzero");
        for v in m[rank].iter_mut() {
            *v = field.mul(*v, inv);
        }
        let pivot_row = m[rank].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i != rank && row[col] != 0 {
                let factor = row[col];
                for (v, &p) in row.iter_mut().zip(&pivot_row) {
                    *v = field.sub(*v, field.mul(factor, p));
                }
            }
        }
        rank += 1;
    }
    rank
}
