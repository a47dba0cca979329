use thiserror::Error;

/// Errors raised by the slope-bound machinery.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid Dynkin type {0}")]
    InvalidType(String),
    #[error("enumeration too large: {0}")]
    TooLarge(String),
    #[error("exponent {exponent} exceeds truncation level r = {r}")]
    ExponentExceedsR { exponent: u32, r: u32 },
    #[error("sequence of length {len} does not fit in domain [0, {t}]")]
    BadLength { len: usize, t: usize },
    #[error("function is not defined on all of [0, {0}]")]
    DomainTooShort(String),
    #[error("{0} lies outside the domain")]
    OutOfDomain(String),
    #[error("characteristic polynomial must start with leading coefficient 1")]
    NotMonic,
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("hypothesis violated: {0}")]
    HypothesisViolation(String),
    #[error("invalid piecewise-linear function: {0}")]
    InvalidPlf(String),
    #[error("invalid divisor sequence: {0}")]
    InvalidSequence(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
