use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("good {good} out of range for {m} goods")]
    GoodOutOfRange { good: usize, m: usize },

    #[error("good {good} appears more than once")]
    DuplicateGood { good: usize },

    #[error("{m} goods exceeds the limit of {limit} for this representation")]
    TooManyGoods { m: usize, limit: usize },

    #[error("invalid valuation: {0}")]
    InvalidValuation(String),

    #[error("invalid instance at {path}: {reason}")]
    InvalidInstance { path: String, reason: String },

    #[error("invalid allocation: {0}")]
    InvalidAllocation(String),

    #[error("parse error at {path}: {message}")]
    Parse { path: String, message: String },

    #[error("number of parts must be at least 1")]
    ZeroParts,

    #[error("search budget of {max_nodes} nodes exhausted")]
    BudgetExhausted { max_nodes: u64 },

    #[error("unsupported input: {0}")]
    Unsupported(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
