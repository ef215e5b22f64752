use thiserror::Error;

/// Errors produced anywhere in the engine.
#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("matrix is not symmetric (max |A - A^T| = {deviation:e})")]
    NotSymmetric { deviation: f64 },

    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    #[error("{what} = {value} exceeds the brute-force guard {limit}")]
    GuardExceeded {
        what: &'static str,
        value: usize,
        limit: usize,
    },

    #[error("insufficient horizon: degree {needed} is required but the series is only known through degree {available}")]
    InsufficientHorizon { needed: usize, available: usize },

    #[error("floating-point overflow: {0}")]
    Overflow(String),

    #[error("domain violation: {0}")]
    DomainViolation(String),

    #[error("basis budget exceeded: {needed} coordinates requested, ceiling is {limit}")]
    BudgetExceeded { needed: usize, limit: usize },

    #[error("block for degree {degree} is not unitary (max |U^H U - I| = {deviation:e})")]
    NotUnitary { degree: usize, deviation: f64 },

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
