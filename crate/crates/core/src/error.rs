use thiserror::Error;

/// Errors produced by the numerical kernels.
#[derive(Debug, Clone, Error)]
pub enum Error {
    /// An argument lies outside the mathematical domain of an operation.
    #[error("domain error: {0}")]
    Domain(String),

    #[error("dimension mismatch: expected {expected}, found {found}")]
    Dimension { expected: usize, found: usize },

    /// The eigensolver (or an inverse it relies on) failed.
    #[error("decomposition error: {0}")]
    Decomposition(String),

    /// A result would overflow the double-precision range.
    #[error("range error: {0}")]
    Range(String),

    /// A numerical evaluation produced a non-finite value or failed to converge.
    #[error("evaluation error: {0}")]
    Evaluation(String),

    #[error("invalid input: {0}")]
    Input(String),
}

pub type Result<T> = std::result::Result<T, Error>;
