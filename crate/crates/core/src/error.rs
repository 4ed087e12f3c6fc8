use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("modulus {0} is not prime")]
    NotPrime(u32),

    #[error("dimension {0} is not supported (qudit dimension must be a prime >= 5)")]
    UnsupportedDimension(u32),

    #[error("zero has no multiplicative inverse")]
    ZeroInverse,

    #[error("degree r = {r} is out of range for d = {d} (expected 1 <= r <= {max})")]
    DegreeOutOfRange { d: u32, r: u32, max: u32 },

    #[error("length mismatch: expected {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },

    #[error("modulus mismatch: {0} vs {1}")]
    ModulusMismatch(u32, u32),

    #[error("invalid parameter: {0}")]
    Parameter(String),

    #[error("{what} needs {size:.3e} steps, above the limit of {limit:.3e}{}", hint_suffix(.hint))]
    Capacity {
        what: &'static str,
        size: f64,
        limit: f64,
        hint: Option<&'static str>,
    },

    #[error("internal consistency check failed: {0}")]
    Consistency(String),

    #[error("character sum left a residual of {residual} (w = {weight}, m = {class})")]
    NumericPrecision {
        residual: i128,
        weight: usize,
        class: u32,
    },

    #[error("output error rate underflowed at epsilon = {0:e}; widen the grid")]
    Underflow(f64),
}

fn hint_suffix(hint: &Option<&'static str>) -> String {
    match hint {
        Some(h) => format!("; {h}"),
        None => String::new(),
    }
}

impl Error {
    pub(crate) fn capacity(what: &'static str, size: f64, limit: f64) -> Self {
        Error::Capacity {
            what,
            size,
            limit,
            hint: None,
        }
    }

    pub fn is_capacity(&self) -> bool {
        matches!(self, Error::Capacity { .. })
    }
}
