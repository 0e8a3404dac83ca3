use thiserror::Error;

/// Errors raised across the library.
///
/// The CLI maps `Capacity` to exit code 3 and `Numeric` to exit code 4.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Inputs whose shapes or structure do not fit together.
    #[error("structural error: {0}")]
    Structural(String),

    /// An exhaustive enumeration would exceed its work cap.
    #[error("capacity exceeded: {what} needs {needed}, cap is {cap} (set LP_LAB_WORK_CAP to override)")]
    Capacity { what: &'static str, needed: u128, cap: u128 },

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    /// A parameter outside the domain of a formula.
    #[error("domain error: {0}")]
    Domain(String),

    #[error("numeric failure: {0}")]
    Numeric(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn structural(msg: impl Into<String>) -> Self {
        Error::Structural(msg.into())
    }

    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn parse(line: usize, msg: impl Into<String>) -> Self {
        Error::Parse { line, msg: msg.into() }
    }
}
