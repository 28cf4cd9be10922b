//! Error type shared by every module in the crate.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("cyclotomic order mismatch: {0} vs {1}")]
    OrderMismatch(u32, u32),
    #[error("division by zero in Q(w_{0})")]
    DivisionByZero(u32),
    #[error("coefficient mode mismatch: {0} vs {1}")]
    ModeMismatch(String, String),
    #[error("group order {order} exceeds enumeration bound {bound}")]
    BoundExceeded { order: usize, bound: usize },
    #[error("series truncation {truncation} too small, coefficient {needed} is out of range")]
    Truncation { truncation: usize, needed: i64 },
    #[error("character pole: base 1 - w^{weight} vanishes with exponent {exponent} at power k = {k}")]
    CharacterPole { weight: i64, exponent: i64, k: i64 },
    #[error("inconsistent data: {0}")]
    Inconsistent(String),
    #[error("invalid input: {0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
