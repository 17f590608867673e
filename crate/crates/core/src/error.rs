use thiserror::Error;

/// Errors raised by the matrix algebra, metric and control-function layers.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error(
        "matrix is not Hermitian: asymmetry {asymmetry:.3e} exceeds tolerance {tolerance:.3e}"
    )]
    NonHermitian { asymmetry: f64, tolerance: f64 },

    #[error(
        "matrix is not positive definite: smallest eigenvalue {min_eig:.6e} <= floor {floor:.6e}"
    )]
    NotPositiveDefinite { min_eig: f64, floor: f64 },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("Jacobi eigensolver did not converge within {sweeps} sweeps (off-diagonal norm {off_norm:.3e})")]
    ConvergenceFailure { sweeps: usize, off_norm: f64 },

    #[error("matrix contains a non-finite entry")]
    NonFinite,

    #[error("control function is not in the contraction class: effective constant {alpha} >= 1")]
    NotInPsiAlpha { alpha: f64 },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("invalid problem: {0}")]
    InvalidProblem(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
