use thiserror::Error;

/// Errors raised by the library.
///
/// Decision procedures never use this type to express a negative answer; an
/// `Err` always means the input was malformed or outside the implemented scope.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("invalid input: {0}")]
    Invalid(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("matrix is singular")]
    Singular,
}

pub type Result<T> = std::result::Result<T, Error>;

/// Returns `Err(DimensionMismatch)` unless `found == expected`.
pub(crate) fn check_dim(expected: usize, found: usize) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { expected, found })
    }
}
