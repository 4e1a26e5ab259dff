use thiserror::Error;

/// Errors raised by solvers, generators and oracles.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// A malformed or out-of-range argument.
    #[error("invalid argument: {0}")]
    Argument(String),
    /// The instance has no solution of the requested size.
    #[error("infeasible: {0}")]
    Infeasible(String),
    /// An edge set that is not the tree or graph it claims to be.
    #[error("validation failed: {0}")]
    Validation(String),
    /// The instance lies outside the class a solver is exact for.
    #[error("not applicable: {0}")]
    Applicability(String),
    /// A brute-force budget or size guard was exceeded.
    #[error("resource limit: {0}")]
    Resource(String),
    /// Text input could not be parsed.
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

macro_rules! bail {
    ($kind:ident, $($arg:tt)*) => {
        return Err($crate::error::Error::$kind(format!($($arg)*)))
    };
}
pub(crate) use bail;
