use thiserror::Error;

/// Errors produced by construction and analysis routines.
#[derive(Debug, Error, PartialEq)]
pub enum Error {
    #[error("alpha must be finite and in (0, 0.5], got {0}")]
    InvalidAlpha(f64),

    #[error("coordinate count must be between 1 and {max}, got {n}")]
    InvalidDimension { n: usize, max: usize },

    #[error("value table must have exactly 2^n = {expected} entries, got {got}")]
    TableLength { expected: usize, got: usize },

    #[error("table entries must be finite")]
    NonFiniteValue,

    #[error("norm exponent must be finite and >= 1, got {0}")]
    InvalidExponent(f64),

    #[error("moment order must be finite and > 1, got {0}")]
    ExponentNotAboveOne(f64),

    #[error("operands must share the same coordinate count and bias")]
    Mismatch,

    #[error("function must take values in {{-1, +1}} exactly")]
    NotBoolean,

    #[error("function must take values in [-1, 1]")]
    ValueOutOfRange,

    #[error("operation is defined on the symmetric cube only (alpha = 1/2)")]
    NotSymmetric,

    #[error("level {level} out of range for n = {n}")]
    LevelOutOfRange { level: usize, n: usize },

    #[error("q must lie in [1, 2], got {0}")]
    InvalidQ(f64),

    #[error("c0 must be positive, got {0}")]
    InvalidC0(f64),

    #[error("projection radius must be positive, got {0}")]
    InvalidRadius(f64),

    #[error("coefficient vector must contain a nonzero entry")]
    ZeroCoefficients,

    #[error("largest coefficient must be at most 1, got {0}")]
    CoefficientTooLarge(f64),

    #[error("scale parameter must be finite and positive, got {0}")]
    InvalidScale(f64),

    #[error("parse error: {0}")]
    Parse(String),

    /// Two mathematically equivalent routes disagreed beyond tolerance.
    /// Indicates a bug, not bad input.
    #[error("internal consistency check failed: {0}")]
    Inconsistency(String),
}

pub type Result<T> = std::result::Result<T, Error>;
