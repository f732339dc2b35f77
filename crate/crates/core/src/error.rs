//! Error type shared across the crate.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum QgError {
    #[error("division by zero")]
    DivisionByZero,

    #[error("conductor {conductor} exceeds the configured bound")]
    ConductorOverflow { conductor: u64 },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("bad scalar literal: {0}")]
    BadScalar(String),

    #[error("not a group table: {0}")]
    NotAGroup(String),

    #[error("invalid structure constants: {0}")]
    InvalidInput(String),

    #[error("structure axiom failed: {0}")]
    AxiomFailed(String),

    #[error("mathematical cross-check failed: {0}")]
    MathCheckFailed(String),

    #[error("cannot split algebra over cyclotomic scalars: {0}")]
    SplitFailed(String),

    #[error("document error: {0}")]
    Document(String),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

pub type QgResult<T> = Result<T, QgError>;
