use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("matrix is not Hermitian (max asymmetry {asymmetry:.3e})")]
    NotHermitian { asymmetry: f64 },

    #[error("matrix is not unitary (max deviation {deviation:.3e})")]
    NotUnitary { deviation: f64 },

    #[error("matrix is not positive semidefinite (min eigenvalue {min_eigenvalue:.3e})")]
    NotPositive { min_eigenvalue: f64 },

    #[error("invalid quantum state: {0}")]
    InvalidState(String),

    #[error("measurement operators are not complete (max deviation from identity {deviation:.3e})")]
    IncompleteMeasurement { deviation: f64 },

    #[error("distribution lengths differ: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },

    #[error("exhaustive permutation bound exceeded: {n} outcomes (max {max})")]
    PermutationBound { n: usize, max: usize },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("weak-measurement inversion undefined: 2*gamma^2 - 1 = 0")]
    InversionUndefined,

    #[error("non-physical distribution: {0}")]
    NonphysicalDistribution(String),

    #[error("count record is empty (total = 0)")]
    EmptyCounts,

    #[error("eigensolver did not converge after {sweeps} sweeps")]
    NoConvergence { sweeps: usize },
}

pub type Result<T> = std::result::Result<T, Error>;
