//! Error type shared by every module.

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("level {0} is not square-free")]
    NotSquareFree(u64),
    #[error("{t} does not divide the level {n}")]
    NotADivisor { t: u64, n: u64 },
    #[error("congruence violated: {0}")]
    Congruence(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("precision failure: {0}")]
    Precision(String),
    #[error("divergence: {0}")]
    Divergence(String),
    #[error("internal consistency fault: {0}")]
    Consistency(String),
    #[error("quadrature did not converge: {0}")]
    Quadrature(String),
    #[error("pairing <{0}, {1}> is not determined by the encoded table")]
    UndeterminedPairing(String, String),
}

pub type Result<T> = std::result::Result<T, Error>;
