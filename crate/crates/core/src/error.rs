use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("{what}: {requested} objects exceed the enumeration budget of {limit}")]
    BudgetExceeded {
        what: &'static str,
        requested: u128,
        limit: u64,
    },

    #[error("{what}: size {size} exceeds the cap of {cap}")]
    CapExceeded {
        what: &'static str,
        size: usize,
        cap: usize,
    },

    #[error("malformed input: {0}")]
    Malformed(String),

    #[error("{0} is not prime")]
    NotPrime(u32),

    #[error("hypothesis not met: {0}")]
    Hypothesis(String),

    #[error("internal inconsistency: {0}")]
    Inconsistent(String),

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),

    #[error("csv error: {0}")]
    Csv(#[from] csv::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
