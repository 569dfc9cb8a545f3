use thiserror::Error;

/// Errors produced across the toolkit.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("degenerate configuration: affine rank {rank} is below dimension {dim}")]
    Degenerate { rank: usize, dim: usize },

    #[error("dilation factor must be positive, got {0}")]
    NonPositiveDilation(i64),

    #[error("index {index} out of range for {len} points")]
    IndexOutOfRange { index: usize, len: usize },

    #[error("unbalanced ratio: sum of alpha is {alpha}, sum of beta is {beta}")]
    Unbalanced { alpha: u64, beta: u64 },

    #[error("bracket [{z}]_{k} is undefined")]
    UndefinedBracket { z: String, k: i64 },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("no admissible subset of generators contains the target point")]
    NoAdmissibleSubset,

    #[error("window exhausted: {0}")]
    WindowExhausted(String),

    #[error("{value} is not {p}-integral")]
    NotPIntegral { value: String, p: u64 },

    #[error("vector is not in the relation lattice")]
    NotInLattice,

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
