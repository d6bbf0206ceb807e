use thiserror::Error;

/// Errors raised for malformed input. Mathematical violations (a failed
/// triangle inequality, a refuted homomorphism) are never errors: they are
/// reported through [`crate::report::CheckReport`].
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("space mismatch: {left} vs {right}")]
    SpaceMismatch { left: String, right: String },

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("empty collection: {0}")]
    Empty(&'static str),

    #[error("invalid scalar literal `{0}`")]
    BadScalar(String),

    #[error("division by zero")]
    DivisionByZero,

    #[error("sequence index must be at least 1, got {0}")]
    BadIndex(u64),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("point {point} is not in the domain {domain}")]
    PointOutsideDomain { point: String, domain: String },

    #[error("incompatible composition: {0}")]
    Incompatible(String),

    #[error("asymmetric table entry for pair ({0}, {1})")]
    AsymmetricEntry(String, String),

    #[error("missing table entry for pair ({0}, {1})")]
    MissingEntry(String, String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("unresolved: {0}")]
    Unresolved(String),

    #[error("{0}")]
    Load(String),
}

pub type Result<T> = std::result::Result<T, Error>;
