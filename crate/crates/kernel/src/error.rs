use thiserror::Error;

/// Errors raised by the algebra kernel.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum KernelError {
    #[error("{0} is not a prime usable as a field characteristic")]
    NotPrime(u64),
    #[error("ring mismatch: {0}")]
    RingMismatch(String),
    #[error("polynomial is not homogeneous: {0}")]
    NonHomogeneous(String),
    #[error("empty generating set where one was required")]
    EmptyInput,
    #[error("degree cap {cap} exceeded: {what}")]
    DegreeCap { cap: i64, what: String },
    #[error("iteration cap {cap} exceeded while {what}")]
    IterationCap { cap: usize, what: String },
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("exact division failed: {0}")]
    NotDivisible(String),
    #[error("invalid argument: {0}")]
    Invalid(String),
    #[error("internal consistency failure: {0}")]
    Inconsistent(String),
}

pub type Result<T, E = KernelError> = std::result::Result<T, E>;
