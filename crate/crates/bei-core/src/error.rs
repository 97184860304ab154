use thiserror::Error;

/// Errors surfaced by the library. Everything combinatorial is total on
/// valid inputs; errors come from capacity limits and malformed input.
#[derive(Debug, Error)]
pub enum Error {
    #[error("capacity exceeded: {what} is {got}, limit {limit}")]
    Capacity {
        what: &'static str,
        got: usize,
        limit: usize,
    },

    #[error("invalid input: {0}")]
    Invalid(String),

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("subset budget exceeded: sweep needs 2^{bits} subsets, limit 2^{limit_bits}")]
    SubsetBudget { bits: u32, limit_bits: u32 },

    #[error("memo budget exceeded after {limit} entries")]
    MemoBudget { limit: usize },

    #[error("internal consistency violation: {0}")]
    Inconsistent(String),
}

pub type Result<T> = std::result::Result<T, Error>;
