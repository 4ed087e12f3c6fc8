//! Dense state-vector ground truth for small dimensions.
//!
//! Everything here works with explicit amplitudes and matrices, and is used
//! to validate the symbolic and combinatorial paths on d = 5 (and d = 7
//! where the register still fits).

mod matrix;
mod state;

pub use matrix::{omega_pow, root_of_unity_exponent, GateMatrix, QuditGates};
pub use state::{StateVector, MAX_STATE_DIM};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::code::{PauliOperator, QrmCode};
use crate::distill::DistillationOutcome;
use crate::error::{Error, Result};
use crate::field::PrimeField;
use crate::gates::{conjugate_x_by_m, PhasePolynomial};
use crate::poly::Polynomial;

pub const GATE_TOL: f64 = 1e-12;
pub const END_TO_END_TOL: f64 = 1e-10;

/// Branches × amplitudes allowed in [`OracleDistillation::new`].
pub const SIMULATION_LIMIT: f64 = 1e6;

/// |k_L> = d^{-r/2} Σ_{deg F <= r, f_0 = k} |ψ_F>.
pub fn build_logical_state(code: &QrmCode, k: u32) -> Result<StateVector> {
    let mut state = StateVector::zeros(code.d(), code.n())?;
    let support = code.logical_state_support(k)?;
    let amp = Complex64::new((support.len() as f64).sqrt().recip(), 0.0);
    for v in &support {
        state.add_to(v.values(), amp);
    }
    Ok(state)
}

fn logical_states(code: &QrmCode) -> Result<Vec<StateVector>> {
    (0..code.d()).map(|k| build_logical_state(code, k)).collect()
}

/// Whether every operator in `gens` fixes every |k_L>.
pub fn generators_fix_codewords(code: &QrmCode, gens: &[PauliOperator]) -> Result<bool> {
    for logical in logical_states(code)? {
        for g in gens {
            let mut moved = logical.clone();
            moved.apply_pauli_power(g, 1);
            if moved.max_abs_diff(&logical) >= GATE_TOL {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

pub fn verify_stabilizers(code: &QrmCode) -> Result<bool> {
    let gens: Vec<PauliOperator> = code.generators().cloned().collect();
    generators_fix_codewords(code, &gens)
}

/// X̄|k_L> = |(k+1)_L> and Z̄|k_L> = ω^k |k_L>, plus orthonormality.
pub fn verify_logical_operators(code: &QrmCode) -> Result<bool> {
    let d = code.d();
    let states = logical_states(code)?;
    for (k, state) in states.iter().enumerate() {
        if !state.is_normalized(GATE_TOL) {
            return Ok(false);
        }
        for (j, other) in states.iter().enumerate() {
            if j != k && other.inner(state).norm() >= GATE_TOL {
                return Ok(false);
            }
        }
        let mut shifted = state.clone();
        shifted.apply_pauli_power(code.logical_x(), 1);
        if shifted.max_abs_diff(&states[(k + 1) % d as usize]) >= GATE_TOL {
            return Ok(false);
        }
        let mut phased = state.clone();
        phased.apply_pauli_power(code.logical_z(), 1);
        let expected = state.scaled(omega_pow(d, k as u32));
        if phased.max_abs_diff(&expected) >= GATE_TOL {
            return Ok(false);
        }
    }
    Ok(true)
}

fn m_phases(d: u32, mu: u32) -> Vec<Complex64> {
    let f = PrimeField::new(d).expect("prime");
    (0..d).map(|y| omega_pow(d, f.mul(mu % d, f.pow(y, 3)))).collect()
}

/// Largest amplitude error of M_{-μ}^{⊗n}|k_L> against ω^{μk³}|k_L>.
pub fn transversal_phase_error(code: &QrmCode, mu: u32) -> Result<f64> {
    let f = code.field();
    let phases = m_phases(code.d(), f.neg(mu % code.d()));
    let mut worst: f64 = 0.0;
    for k in f.elements() {
        let logical = build_logical_state(code, k)?;
        let mut out = logical.clone();
        out.apply_transversal_diagonal(&phases);
        let expected = logical.scaled(omega_pow(code.d(), f.mul(mu % code.d(), f.pow(k, 3))));
        worst = worst.max(out.max_abs_diff(&expected));
    }
    Ok(worst)
}

pub fn verify_transversality_numeric(code: &QrmCode, mu: u32) -> Result<bool> {
    Ok(transversal_phase_error(code, mu)? < GATE_TOL)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GateIdentityReport {
    pub unitary: bool,
    pub m_order_d: bool,
    pub zx_commutation: bool,
    pub h_order_four: bool,
}

impl GateIdentityReport {
    pub fn all(&self) -> bool {
        self.unitary && self.m_order_d && self.zx_commutation && self.h_order_four
    }
}

pub fn verify_gate_identities(d: u32) -> Result<GateIdentityReport> {
    let g = QuditGates::new(d)?;
    let id = GateMatrix::identity(d as usize);
    let mut unitary = g.x().is_unitary(GATE_TOL)
        && g.z().is_unitary(GATE_TOL)
        && g.h().is_unitary(GATE_TOL)
        && g.cz().is_unitary(GATE_TOL);
    let mut m_order_d = true;
    for a in 0..d {
        unitary &= g.m(a).is_unitary(GATE_TOL);
        m_order_d &= g.m(a).pow(d).approx_eq(&id, GATE_TOL);
        for b in 0..d {
            unitary &= g.z_quadratic(a, b).is_unitary(GATE_TOL);
            if b != 0 {
                unitary &= g.x_affine(a, b)?.is_unitary(GATE_TOL);
            }
        }
    }
    let xz = g.x().mul(&g.z());
    let w = omega_pow(d, 1);
    let zx_commutation = g.z().mul(&g.x()).approx_eq(
        &GateMatrix::from_fn(d as usize, |i, j| xz.get(i, j) * w),
        GATE_TOL,
    );
    let h_order_four = g.h().pow(4).approx_eq(&id, GATE_TOL);
    Ok(GateIdentityReport {
        unitary,
        m_order_d,
        zx_commutation,
        h_order_four,
    })
}

/// Coefficients c_0..c_{d-1} of the unique polynomial over the whole field
/// with the given values at 0..d.
pub fn full_field_coeffs(field: PrimeField, values: &[u32]) -> Vec<u32> {
    let d = field.modulus() as usize;
    let mut out = vec![0u32; d];
    for (x, &vx) in values.iter().enumerate() {
        if vx == 0 {
            continue;
        }
        let mut basis = vec![0u32; d];
        basis[0] = 1;
        let mut denom = 1;
        for y in 0..d as u32 {
            if y == x as u32 {
                continue;
            }
            // basis *= (X - y)
            let mut next = vec![0u32; d];
            for i in 0..d {
                if basis[i] == 0 {
                    continue;
                }
                if i + 1 < d {
                    next[i + 1] = field.add(next[i + 1], basis[i]);
                }
                next[i] = field.sub(next[i], field.mul(basis[i], y));
            }
            basis = next;
            denom = field.mul(denom, field.sub(x as u32, y));
        }
        let scale = field.mul(vx, field.inv(denom).expect("distinct points"));
        for (o, b) in out.iter_mut().zip(&basis) {
            *o = field.add(*o, field.mul(*b, scale));
        }
    }
    out
}

fn diagonal_exponents(m: &GateMatrix, d: u32) -> Option<Vec<u32>> {
    m.diagonal_entries(GATE_TOL)?
        .into_iter()
        .map(|z| root_of_unity_exponent(d, z, 1e-9))
        .collect()
}

/// Cubic coefficient of the diagonal gate X_{α,β}† M_μ X_{α,β} = ω^{μ(α+βn̂)³},
/// or of X_{α,β} M_μ X_{α,β}† when `inverse` is set. Errors if the result
/// is not a diagonal phase gate of degree <= 3.
pub fn affine_conjugate_cubic(d: u32, alpha: u32, beta: u32, mu: u32, inverse: bool) -> Result<u32> {
    let g = QuditGates::new(d)?;
    let x = g.x_affine(alpha, beta)?;
    let conj = if inverse {
        x.mul(&g.m(mu)).mul(&x.adjoint())
    } else {
        x.adjoint().mul(&g.m(mu)).mul(&x)
    };
    let exps = diagonal_exponents(&conj, d)
        .ok_or_else(|| Error::Consistency("affine conjugate of M is not a diagonal phase".into()))?;
    let coeffs = full_field_coeffs(g.field(), &exps);
    if coeffs[4..].iter().any(|&c| c != 0) {
        return Err(Error::Consistency(
            "affine conjugate of M has degree above 3".into(),
        ));
    }
    Ok(coeffs[3])
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConjugationReport {
    /// M_μ X M_μ† = X ω^{μ(3n̂² + 3n̂ + 1)}.
    pub x_conjugation: bool,
    /// Conjugating M_μ by X_{α,β} gives a cubic with coefficient μβ³
    /// (μβ^{-3} for the opposite order) plus a quadratic.
    pub affine_conjugation: bool,
    /// M_μ X^a Z^b M_μ† is X^a times a quadratic diagonal phase.
    pub pauli_conjugates_clifford: bool,
    /// H Z_{α,0} H† = X_{-α,1} and H X_{α,β} H† = X_{0,β⁻¹} Z_{αβ⁻¹,0}.
    pub hadamard_exchange: bool,
}

impl ConjugationReport {
    pub fn all(&self) -> bool {
        self.x_conjugation
            && self.affine_conjugation
            && self.pauli_conjugates_clifford
            && self.hadamard_exchange
    }
}

pub fn verify_conjugation_identities(d: u32) -> Result<ConjugationReport> {
    let g = QuditGates::new(d)?;
    let f = g.field();
    let x = g.x();
    let z = g.z();

    let mut x_conjugation = true;
    for mu in 0..d {
        let m = g.m(mu);
        let lhs = m.mul(&x).mul(&m.adjoint());
        let rhs = x.mul(&g.phase(&conjugate_x_by_m(f, mu)));
        x_conjugation &= lhs.approx_eq(&rhs, GATE_TOL);
    }

    let mut affine_conjugation = true;
    for alpha in 0..d {
        for beta in 1..d {
            let cube = f.pow(beta, 3);
            for mu in 0..d {
                let forward = affine_conjugate_cubic(d, alpha, beta, mu, false);
                let backward = affine_conjugate_cubic(d, alpha, beta, mu, true);
                affine_conjugation &=
                    forward == Ok(f.mul(mu, cube)) && backward == Ok(f.mul(mu, f.inv(cube)?));
            }
        }
    }

    let mut pauli_conjugates_clifford = true;
    for mu in 0..d {
        let m = g.m(mu);
        for a in 0..d {
            let x_inv = x.pow(f.neg(a));
            for b in 0..d {
                let p = x.pow(a).mul(&z.pow(b));
                let conj = m.mul(&p).mul(&m.adjoint());
                let q = match diagonal_exponents(&x_inv.mul(&conj), d) {
                    Some(q) => q,
                    None => {
                        pauli_conjugates_clifford = false;
                        continue;
                    }
                };
                // Vanishing third finite difference <=> quadratic exponent.
                let at = |i: u32| q[(i % d) as usize];
                pauli_conjugates_clifford &= (0..d).all(|i| {
                    let third = f.sub(
                        f.add(at(i + 3), f.mul(3, at(i + 1))),
                        f.add(f.mul(3, at(i + 2)), at(i)),
                    );
                    third == 0
                });
            }
        }
    }

    let h = g.h();
    let hd = h.adjoint();
    let mut hadamard_exchange = true;
    for alpha in 0..d {
        let conj = h.mul(&g.z_quadratic(alpha, 0)).mul(&hd);
        hadamard_exchange &= conj.approx_eq(&g.x_affine(f.neg(alpha), 1)?, GATE_TOL);
        for beta in 1..d {
            let conj = h.mul(&g.x_affine(alpha, beta)?).mul(&hd);
            let beta_inv = f.inv(beta)?;
            let expected = g
                .x_affine(0, beta_inv)?
                .mul(&g.z_quadratic(f.mul(alpha, beta_inv), 0));
            hadamard_exchange &=
                conj.approx_eq(&expected, GATE_TOL) && conj.monomial_structure(GATE_TOL).is_some();
        }
    }

    Ok(ConjugationReport {
        x_conjugation,
        affine_conjugation,
        pauli_conjugates_clifford,
        hadamard_exchange,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ProjectorReport {
    pub idempotency_error: f64,
    /// tr(P).
    pub rank: f64,
}

/// Builds the codespace projector Π_g (1/d) Σ_j g^j column by column.
pub fn codespace_projector_report(code: &QrmCode) -> Result<ProjectorReport> {
    let d = code.d();
    let n = code.n();
    let dim = StateVector::zeros(d, n)?.amplitudes().len();
    let gens: Vec<PauliOperator> = code.generators().cloned().collect();
    let project = |s: &mut StateVector| -> Result<()> {
        for g in &gens {
            s.project_eigenspace(g, 0)?;
        }
        Ok(())
    };
    let mut trace = 0.0;
    let mut worst: f64 = 0.0;
    let mut digits = vec![0u32; n];
    for col in 0..dim {
        let mut rest = col;
        for v in digits.iter_mut().rev() {
            *v = (rest % d as usize) as u32;
            rest /= d as usize;
        }
        let mut s = StateVector::zeros(d, n)?;
        s.add_to(&digits, Complex64::new(1.0, 0.0));
        project(&mut s)?;
        trace += s.amplitudes()[col].re;
        let mut twice = s.clone();
        project(&mut twice)?;
        worst = worst.max(twice.max_abs_diff(&s));
    }
    Ok(ProjectorReport {
        idempotency_error: worst,
        rank: trace,
    })
}

/// M_{-μ} Z^k |+>, the twisted X basis in which depolarized magic states
/// are diagonal.
pub fn twisted_state(d: u32, mu: u32, k: u32) -> Vec<Complex64> {
    let f = PrimeField::new(d).expect("prime");
    let norm = 1.0 / (d as f64).sqrt();
    (0..d)
        .map(|y| {
            let e = f.add(f.neg(f.mul(mu % d, f.pow(y, 3))), f.mul(k % d, y));
            omega_pow(d, e) * norm
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TwistedSpectrum {
    /// <t_k|ρ|t_k> for k = 0..d.
    pub diagonal: Vec<f64>,
    pub max_off_diagonal: f64,
}

/// Matrix of ρ = (1-p)|M><M| + p I/d in the twisted basis, where
/// |M> = M_{-μ}|+> and ε = p(d-1)/d is the infidelity.
pub fn twisted_basis_spectrum(d: u32, mu: u32, epsilon: f64) -> Result<TwistedSpectrum> {
    PrimeField::qudit(d)?;
    let p = epsilon * d as f64 / (d - 1) as f64;
    let magic = twisted_state(d, mu, 0);
    let rho = GateMatrix::from_fn(d as usize, |i, j| {
        let mixed = if i == j { p / d as f64 } else { 0.0 };
        magic[i] * magic[j].conj() * (1.0 - p) + mixed
    });
    let basis: Vec<Vec<Complex64>> = (0..d).map(|k| twisted_state(d, mu, k)).collect();
    let element = |a: &[Complex64], b: &[Complex64]| -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for (i, ai) in a.iter().enumerate() {
            for (j, bj) in b.iter().enumerate() {
                acc += ai.conj() * rho.get(i, j) * bj;
            }
        }
        acc
    };
    let mut diagonal = Vec::with_capacity(d as usize);
    let mut max_off_diagonal: f64 = 0.0;
    for (j, a) in basis.iter().enumerate() {
        for (k, b) in basis.iter().enumerate() {
            let v = element(a, b);
            if j == k {
                diagonal.push(v.re);
            } else {
                max_off_diagonal = max_off_diagonal.max(v.norm());
            }
        }
    }
    Ok(TwistedSpectrum {
        diagonal,
        max_off_diagonal,
    })
}

/// Per-branch results of the exact protocol simulation, reusable across ε.
///
/// Each branch is a product input ⊗_x M_{-μ} Z^{e_x}|+>. The protocol
/// measures the Z-type generators, undoes a nontrivial outcome with the
/// Clifford M̄ X_F^{-1} M̄† (M̄ = M_{-μ}^{⊗n}, X_F the Pauli carrying the
/// codespace to that outcome), then measures the X-type generators and
/// keeps the trivial outcome. The logical class m is read off as the weight
/// on M̄ Z̄^m |+_L>.
#[derive(Clone, Debug)]
pub struct OracleDistillation {
    d: u32,
    n: usize,
    mu: u32,
    accept: Vec<f64>,
    classes: Vec<Vec<f64>>,
}

impl OracleDistillation {
    pub fn new(code: &QrmCode, mu: u32) -> Result<Self> {
        let d = code.d();
        let n = code.n();
        let f = code.field();
        let branches = (d as f64).powi(n as i32);
        if branches * branches > SIMULATION_LIMIT {
            return Err(Error::capacity(
                "exact distillation simulation",
                branches * branches,
                SIMULATION_LIMIT,
            ));
        }
        let mu = mu % d;
        let m_bar = m_phases(d, f.neg(mu));
        let m_bar_dag: Vec<Complex64> = m_bar.iter().map(|z| z.conj()).collect();

        // Corrections: for each Z-syndrome, an unshifted X_F producing it.
        let z_gens = code.z_stabilizers();
        let x_gens = code.x_stabilizers();
        let outcomes = (d as usize).pow(z_gens.len() as u32);
        let mut corrections: Vec<Option<PauliOperator>> = vec![None; outcomes];
        let high: Vec<u64> = (code.r() as u64 + 1..=(d as u64 - 2)).collect();
        for idx in 0..outcomes {
            let mut rest = idx;
            let mut coeffs = vec![0u32; n];
            for &m in &high {
                coeffs[m as usize] = (rest % d as usize) as u32;
                rest /= d as usize;
            }
            let xf = PauliOperator::x_type(&Polynomial::from_coeffs(f, &coeffs).evaluate());
            let syndrome = code.syndrome(&xf)?;
            // Z_G has eigenvalue ω^{-σ(Z_G, X_F)} on X_F|code>.
            let key = syndrome[x_gens.len()..]
                .iter()
                .rev()
                .fold(0usize, |acc, &s| acc * d as usize + f.neg(s) as usize);
            corrections[key] = Some(xf);
        }
        let corrections: Vec<PauliOperator> = corrections
            .into_iter()
            .map(|c| c.ok_or_else(|| Error::Consistency("Z syndrome without a correction".into())))
            .collect::<Result<_>>()?;

        // Logical targets M̄ Z̄^m |+_L>.
        let logical = logical_states(code)?;
        let mut plus_l = StateVector::zeros(d, n)?;
        for state in &logical {
            plus_l = add_states(&plus_l, state, Complex64::new((d as f64).sqrt().recip(), 0.0));
        }
        let targets: Vec<StateVector> = (0..d)
            .map(|m| {
                let mut t = plus_l.clone();
                t.apply_pauli_power(code.logical_z(), m);
                t.apply_transversal_diagonal(&m_bar);
                t
            })
            .collect();

        let sites: Vec<Vec<Complex64>> = (0..d).map(|k| twisted_state(d, mu, k)).collect();
        let total = branches as usize;
        let mut accept = Vec::with_capacity(total);
        let mut classes = Vec::with_capacity(total);
        let mut e = vec![0u32; n];
        for idx in 0..total {
            let mut rest = idx;
            for v in e.iter_mut().rev() {
                *v = (rest % d as usize) as u32;
                rest /= d as usize;
            }
            let input: Vec<Vec<Complex64>> = e.iter().map(|&k| sites[k as usize].clone()).collect();
            let psi = StateVector::product(d, &input)?;
            let mut p_acc = 0.0;
            let mut weights = vec![0.0; d as usize];
            for (t, correction) in corrections.iter().enumerate() {
                let mut phi = psi.clone();
                let mut rest = t;
                for g in z_gens {
                    phi.project_eigenspace(g, (rest % d as usize) as u32)?;
                    rest /= d as usize;
                }
                phi.apply_transversal_diagonal(&m_bar_dag);
                phi.apply_pauli_power(correction, d - 1);
                phi.apply_transversal_diagonal(&m_bar);
                for g in x_gens {
                    phi.project_eigenspace(g, 0)?;
                }
                let norm = phi.norm_sqr();
                let mut captured = 0.0;
                for (w, target) in weights.iter_mut().zip(&targets) {
                    let overlap = target.inner(&phi).norm_sqr();
                    *w += overlap;
                    captured += overlap;
                }
                if (captured - norm).abs() > END_TO_END_TOL {
                    return Err(Error::Consistency(format!(
                        "corrected state left the codespace (norm {norm}, captured {captured})"
                    )));
                }
                p_acc += norm;
            }
            accept.push(p_acc);
            classes.push(weights);
        }
        Ok(OracleDistillation {
            d,
            n,
            mu,
            accept,
            classes,
        })
    }

    /// Mixes the branches with the twisted-basis eigenvalues of the
    /// depolarized input.
    pub fn outcome(&self, epsilon: f64) -> Result<DistillationOutcome> {
        if !(0.0..1.0).contains(&epsilon) {
            return Err(Error::Parameter(format!("epsilon {epsilon} outside [0, 1)")));
        }
        let spectrum = twisted_basis_spectrum(self.d, self.mu, epsilon)?;
        let d = self.d as usize;
        let mut p_accept = 0.0;
        let mut joint = vec![0.0; d];
        let mut e = vec![0usize; self.n];
        for (idx, (acc, cls)) in self.accept.iter().zip(&self.classes).enumerate() {
            let mut rest = idx;
            for v in e.iter_mut().rev() {
                *v = rest % d;
                rest /= d;
            }
            let prob: f64 = e.iter().map(|&k| spectrum.diagonal[k]).product();
            p_accept += prob * acc;
            for (j, c) in joint.iter_mut().zip(cls) {
                *j += prob * c;
            }
        }
        let logical_dist: Vec<f64> = joint.iter().map(|&p| p / p_accept).collect();
        let eps_out = joint[1..].iter().sum::<f64>() / p_accept;
        Ok(DistillationOutcome {
            epsilon,
            p_accept,
            logical_dist,
            eps_out,
        })
    }
}

fn add_states(a: &StateVector, b: &StateVector, c: Complex64) -> StateVector {
    let mut out = a.clone();
    let mut digits = vec![0u32; a.n()];
    let d = a.d() as usize;
    for (idx, amp) in b.amplitudes().iter().enumerate() {
        if amp.norm() == 0.0 {
            continue;
        }
        let mut rest = idx;
        for v in digits.iter_mut().rev() {
            *v = (rest % d) as u32;
            rest /= d;
        }
        out.add_to(&digits, amp * c);
    }
    out
}

pub fn simulate_distillation_exact(code: &QrmCode, mu: u32, epsilon: f64) -> Result<DistillationOutcome> {
    OracleDistillation::new(code, mu)?.outcome(epsilon)
}

/// Applies a diagonal gate given by its exponent polynomial to one qudit.
pub fn phase_gate(d: u32, p: &PhasePolynomial) -> Result<GateMatrix> {
    Ok(QuditGates::new(d)?.phase(p))
}
