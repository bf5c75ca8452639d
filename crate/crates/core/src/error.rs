use num_complex::Complex64;
use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("line {line}: non-finite coordinate")]
    NonFinite { line: usize },

    #[error("invalid JSON sequence: {0}")]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error("invalid argument: {0}")]
    Argument(String),

    #[error("sequence has a zero at the origin; shift the origin first")]
    OriginZero,

    #[error("radius {requested} exceeds the completeness guarantee {available}")]
    Incomplete { requested: f64, available: f64 },

    #[error("integral diverges at t = 0: {point} coincides with the zero at {zero}")]
    Divergent { point: Complex64, zero: Complex64 },

    #[error("{0} is not a zero of the sequence")]
    NotAZero(Complex64),

    #[error("samples are not sorted by x (index {index})")]
    Unsorted { index: usize },

    #[error("assertion failed: {0}")]
    Assertion(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn argument(msg: impl Into<String>) -> Error {
    Error::Argument(msg.into())
}
