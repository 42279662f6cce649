use thiserror::Error;

/// Errors shared by every module of the crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// An index fell outside the tabulated range `1..=n_max`.
    #[error("index {index} out of range (table covers 1..={n_max})")]
    OutOfRange { index: i64, n_max: u64 },

    /// A 128-bit accumulator overflowed on the exact integer path.
    #[error("integer overflow in {0}")]
    Overflow(&'static str),

    #[error("i/o error: {0}")]
    Io(String),

    #[error("parse error: {0}")]
    Parse(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
