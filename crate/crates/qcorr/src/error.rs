//! Error type shared across the crate.

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, thiserror::Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("matrix is not Hermitian: Frobenius defect {defect:.3e} exceeds {limit:.3e}")]
    NotHermitian { defect: f64, limit: f64 },

    #[error("not a valid density matrix: {0}")]
    InvalidDensity(String),

    #[error("total dimension {dim} exceeds cap {cap}")]
    DimensionCap { dim: usize, cap: usize },

    #[error("invalid subsystem selection: {0}")]
    InvalidSubsystems(String),

    #[error("invalid partition: {0}")]
    InvalidPartition(String),

    #[error("invalid split tree: {0}")]
    InvalidSplitTree(String),

    #[error("invalid weights: {0}")]
    InvalidWeights(String),

    #[error("support of rho is not contained in support of sigma: escaped mass {mass:.3e}")]
    SupportNotContained { mass: f64 },

    #[error("block allocation invalid: {0}")]
    InvalidBlocks(String),

    #[error("invalid generator parameter: {0}")]
    InvalidParameter(String),

    #[error("unknown state name: {0}")]
    UnknownState(String),

    #[error("premise violated: {0}")]
    PremiseViolation(String),
}
