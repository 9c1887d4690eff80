use thiserror::Error;

/// Errors produced anywhere in the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid partition constraint: at most {max_parts} parts of size at most {max_part} (both must be >= 1)")]
    InvalidConstraint { max_parts: u32, max_part: u32 },

    #[error("invalid flag spec: {0}")]
    InvalidFlagSpec(String),

    #[error("invalid partition: {0}")]
    InvalidPartition(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("unsupported field size {0}; supported: 2, 3, 5")]
    UnsupportedField(u32),

    #[error("enumeration budget exceeded: {requested} objects requested, budget is {budget}")]
    BudgetExceeded { requested: u128, budget: u64 },

    #[error("subspace is not a {side} ideal: closure fails under multiplication by matrix unit E[{row},{col}]")]
    NotAnIdeal {
        side: &'static str,
        row: usize,
        col: usize,
    },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("internal inconsistency: negative rank {value} in codimension {codim}")]
    NegativeRank { codim: usize, value: String },

    #[error("internal inconsistency: {0}")]
    Inconsistent(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
