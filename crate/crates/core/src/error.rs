use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid modulus {0}: need 2 <= m <= 10000")]
    InvalidModulus(i64),
    #[error("invalid character {0:?} mod {1}")]
    InvalidCharacter(Vec<i64>, i64),
    #[error("bad reduction: p = {p} divides m = {m}")]
    BadReduction { p: i64, m: i64 },
    #[error("degenerate exponent matrix: {0}")]
    Degenerate(String),
    #[error("domain too large: {0}")]
    DomainTooLarge(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("inconsistent data: {0}")]
    Inconsistent(String),
    #[error("resource limit exceeded: {0}")]
    Resource(String),
    #[error("invalid input: {0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
