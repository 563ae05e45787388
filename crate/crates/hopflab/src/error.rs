//! Error type shared across the workbench.

use thiserror::Error;

/// Errors reported by construction and computation entry points.
///
/// Axiom failures discovered by verification routines are not errors: those
/// come back as fail reports with witnesses. An `Error` means the request
/// itself could not be carried out.
#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("field mismatch: {0}")]
    FieldMismatch(String),

    #[error("division by zero")]
    DivisionByZero,

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("index out of range: {0}")]
    OutOfRange(String),

    #[error("not invertible: {0}")]
    NotInvertible(String),

    #[error("axiom violation: {0}")]
    AxiomViolation(String),

    #[error("precondition violated: {0}")]
    PrereqViolated(String),

    #[error("enumeration too large: affine dimension {affine_dim} exceeds cap {cap}")]
    EnumerationTooLarge { affine_dim: usize, cap: usize },

    #[error("missing matrix for index pattern ({0})")]
    MissingMatrix(String),

    #[error("unsupported field: {0}")]
    UnsupportedField(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("io error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;
