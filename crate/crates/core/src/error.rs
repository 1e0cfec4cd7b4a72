use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid group parameters: {0}")]
    InvalidParameters(String),

    #[error("cannot parse {what} {input:?}: {reason}")]
    Parse {
        what: &'static str,
        input: String,
        reason: String,
    },

    #[error(
        "group of order {order} exceeds the enumeration bound {bound}; \
         use table-level product operations instead"
    )]
    EnumerationBound { order: u64, bound: u64 },

    #[error("no prime p = 1 mod {exponent} with p > 2*sqrt({order}) below {ceiling}")]
    PrimeSearch { exponent: u64, order: u64, ceiling: u64 },

    #[error("modulus {0} is not prime")]
    NotPrime(u64),

    #[error("matrices {0} and {1} do not commute")]
    NonCommuting(usize, usize),

    #[error("linear algebra: {0}")]
    Linalg(String),

    #[error("invalid complex: {0}")]
    Complex(String),

    #[error("{}:{line}: {message}", path.display())]
    FacetFile {
        path: PathBuf,
        line: usize,
        message: String,
    },

    #[error("invalid action: {0}")]
    Action(String),

    #[error("invalid verification case: {0}")]
    Case(String),

    #[error("internal consistency error: {0}")]
    Internal(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    /// True for failures that indicate a bug or a broken invariant rather than bad input.
    pub fn is_internal(&self) -> bool {
        matches!(
            self,
            Error::Internal(_) | Error::NonCommuting(..) | Error::Linalg(_)
        )
    }

    pub(crate) fn parse(what: &'static str, input: &str, reason: impl Into<String>) -> Self {
        Error::Parse {
            what,
            input: input.to_string(),
            reason: reason.into(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
