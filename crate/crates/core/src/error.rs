use thiserror::Error;

/// Errors produced by the numerical routines and the report harness.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("matrix of dimension {dim} exceeds the size cap {cap}")]
    SizeCap { dim: usize, cap: usize },

    #[error("invalid matrix: {0}")]
    InvalidMatrix(String),

    #[error("matrix is not Hermitian (asymmetry {asymmetry:.3e})")]
    NotHermitian { asymmetry: f64 },

    #[error("eigensolver did not converge after {sweeps} sweeps")]
    NoConvergence { sweeps: usize },

    #[error("matrix is not positive semidefinite (smallest eigenvalue {min_eigenvalue:.3e})")]
    NotPsd { min_eigenvalue: f64 },

    #[error("vector is not a unit vector (norm {norm})")]
    NotUnit { norm: f64 },

    #[error("invalid tolerance {0}")]
    InvalidTol(f64),

    #[error("evaluation budget of {0} exceeded")]
    BudgetExceeded(usize),

    #[error("dimension {dim} too small, need at least {min}")]
    DimTooSmall { dim: usize, min: usize },

    #[error("unknown bound id {0:?}")]
    UnknownBound(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("i/o error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
