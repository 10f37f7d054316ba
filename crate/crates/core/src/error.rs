use thiserror::Error;

/// Errors raised by the matrix primitives, densities, samplers and checks.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("matrix is not hermitian")]
    NotHermitian,
    #[error("matrix is not positive definite (pivot {pivot:e} at index {index})")]
    NotPositiveDefinite { index: usize, pivot: f64 },
    #[error("invalid lower triangular factor: {0}")]
    InvalidFactor(String),
    #[error("parameter out of domain: {0}")]
    Domain(String),
    #[error("point outside the support: {0}")]
    Support(String),
    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },
    #[error("coordinate vector has length {actual}, expected {expected}")]
    InvalidLength { expected: usize, actual: usize },
    #[error("finite-difference Jacobian is numerically singular (condition estimate {condition:e})")]
    SingularJacobian { condition: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;
