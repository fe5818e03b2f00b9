use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("modulus {0} must be a prime at most 251")]
    BadModulus(u32),
    #[error("infinite-dimensional: {0}")]
    InfiniteDimensional(String),
    #[error("invalid algebra: {0}")]
    InvalidAlgebra(String),
    #[error("invalid module: {0}")]
    InvalidModule(String),
    #[error("objects live over different algebras")]
    AlgebraMismatch,
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("budget exceeded: {0}")]
    Budget(String),
    #[error("undecided at cutoff: {0}")]
    Undecided(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("unknown name: {0}")]
    UnknownName(String),
}

pub type Result<T> = std::result::Result<T, Error>;
