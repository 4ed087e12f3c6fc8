//! Quantum Reed-Muller codes on prime-dimension qudits.
//!
//! The code `QRM_d(r)` lives on `n = d - 1` qudits, one per nonzero element
//! of `F_d`. Its X-type stabilizers are the evaluation vectors of `x^m` for
//! `1 <= m <= r` and its Z-type stabilizers those of `x^m` for
//! `1 <= m <= d - 2 - r`. When `3r < d - 1` the qudit cubic phase gate
//! `M_μ = Σ_y ω^{μ y³} |y><y|` is transversal, which makes these codes
//! candidates for distilling `M_μ` magic states.
//!
//! The crate covers
//!
//! * finite-field and polynomial arithmetic on `F_d^*` ([`field`], [`poly`]),
//! * the code, its Paulis and distances ([`code`]),
//! * transversality of `M_μ` and the Clifford hierarchy ([`gates`]),
//! * exact accepted-error enumerators, the distillation map and thresholds
//!   ([`distill`]),
//! * a dense state-vector reference for small `d` ([`oracle`]).
//!
//! The heavy enumerations take an [`Execution`] and run on rayon when the
//! `parallel` feature is enabled.

pub mod code;
pub mod distill;
pub mod error;
pub mod exec;
pub mod field;
pub mod gates;
pub mod oracle;
pub mod poly;
mod sweep;

pub use code::{FullDistance, PauliOperator, QrmCode, ZErrorClass};
pub use distill::{
    accepted_enumerator, distill_map, gamma, threshold, AcceptedEnumerator, DistillationOutcome, Method,
    NoiseModel, ThresholdResult,
};
pub use error::{Error, Result};
pub use exec::Execution;
pub use field::{is_prime, PrimeField};
pub use gates::{transversality_check, PhasePolynomial, TransversalityReport};
pub use poly::{EvaluationVector, Polynomial};
