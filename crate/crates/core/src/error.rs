use thiserror::Error;

/// Errors raised while building or validating algebraic data.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid root system type: {0}")]
    InvalidType(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("inconsistent Satake data: {0}")]
    InconsistentSatake(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("unknown form `{name}`; available: {available}")]
    UnknownForm { name: String, available: String },
    #[error("dimension mismatch: expected {expected}, got {got}")]
    Dimension { expected: usize, got: usize },
    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

pub type Result<T> = std::result::Result<T, Error>;
