use std::io;

use thiserror::Error;

/// Errors raised across the laboratory.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("out of range: {0}")]
    OutOfRange(String),
    #[error("resource error: {0}")]
    Resource(String),
    #[error("numeric error: {0}")]
    Numeric(String),
    /// A moment or pointwise fact was used outside the range where it is known to hold.
    #[error("validity range violated: {0}")]
    Validity(String),
    /// No admissible derivation exists; each entry names one violated constraint.
    #[error("no admissible strategy: {}", .0.join("; "))]
    Infeasible(Vec<String>),
    #[error("cache error: {0}")]
    Cache(String),
    #[error(transparent)]
    Io(#[from] io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn invalid<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::InvalidArgument(msg.into()))
}

pub(crate) fn out_of_range<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::OutOfRange(msg.into()))
}
