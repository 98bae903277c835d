use thiserror::Error;

/// Failure modes shared by every module of the crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("sequence order n must be at least 1")]
    ZeroOrder,

    #[error("coefficient index {j} outside 0..={n}")]
    IndexOutOfRange { j: usize, n: usize },

    #[error("precision policy provides {available} significand bits but {required} are required")]
    PrecisionViolation { required: u64, available: u64 },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("singular point: {0}")]
    Singular(String),

    #[error("budget exceeded: {0}")]
    Budget(String),

    #[error("series tail bound {achieved:e} is above the target {target:e}")]
    TailNotConverged { achieved: f64, target: f64 },

    #[error("quadrature did not reach tolerance {tol:e} (estimate {estimate:e})")]
    Quadrature { tol: f64, estimate: f64 },

    #[error("pre- and post-selected states are orthogonal (overlap {0:e})")]
    Orthogonal(f64),

    #[error("conditional probability undefined: {0}")]
    UndefinedConditional(String),

    #[error("matrix is not Hermitian (deviation {0:e})")]
    NotHermitian(f64),

    #[error("matrix is not unitary (deviation {0:e})")]
    NotUnitary(f64),

    #[error("dimension mismatch: expected {expected}, found {found}")]
    Dimension { expected: usize, found: usize },

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}
