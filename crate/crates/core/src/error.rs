use thiserror::Error;

/// Errors raised by the linear algebra, space and check layers.
///
/// Inequality violations are never errors; they are reported as data.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("matrix is not Hermitian (relative asymmetry {asymmetry:.3e})")]
    NotHermitian { asymmetry: f64 },

    #[error("matrix is not positive semidefinite (smallest eigenvalue {min_eigenvalue:.6e})")]
    NotPsd { min_eigenvalue: f64 },

    #[error("Jacobi eigensolver did not converge within {sweeps} sweeps")]
    NoConvergence { sweeps: usize },

    #[error("non-finite entry at ({row}, {col})")]
    NonFinite { row: usize, col: usize },

    #[error("malformed matrix: {0}")]
    Malformed(String),

    #[error("operator does not admit an A-adjoint")]
    NoAdjoint,

    #[error("operators are bound to different spaces")]
    SpaceMismatch,

    #[error("precondition not met: {0}")]
    PreconditionNotMet(String),

    #[error("rank {rank} too small for this construction (needs at least {needed})")]
    RankTooSmall { rank: usize, needed: usize },

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
}

pub type Result<T> = std::result::Result<T, Error>;
