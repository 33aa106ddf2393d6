use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("form is not positive definite")]
    NotPositiveDefinite,
    #[error("form is not symmetric")]
    NotSymmetric,
    #[error("configuration is not well-rounded")]
    NotWellRounded,
    #[error("indexed vectors are linearly dependent")]
    DependentVectors,
    #[error("configuration contains the zero vector")]
    ZeroVector,
    #[error("duplicate vector {0:?}")]
    DuplicateVector(Vec<i64>),
    #[error("budget exhausted after {iterations} iterations (pool size {pool})")]
    BudgetExhausted { iterations: usize, pool: usize },
    #[error("isometry search undecided after {0} nodes")]
    Undecided(u64),
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("incomplete input: {0}")]
    IncompleteInput(String),
    #[error("incomplete layers: {0}")]
    IncompleteLayers(String),
    #[error("d∘d ≠ 0 at rank {0}")]
    DifferentialSanityFailed(usize),
    #[error("matrix does not stabilize the configuration")]
    NotStabilizing,
    #[error("missing orientation data: {0}")]
    MissingOrientation(String),
    #[error("certificate verification failed: {0}")]
    Certificate(String),
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
