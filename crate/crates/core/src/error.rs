use thiserror::Error;

/// Failure modes shared by every module.
///
/// The variants are coarse on purpose: callers (notably the CLI) map them
/// onto exit codes, and the message carries the specifics.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Malformed or out-of-range input (bad index, unsupported type, ...).
    #[error("input error: {0}")]
    Input(String),
    /// Input that is well-formed but contradicts a required invariant.
    #[error("inconsistent datum: {0}")]
    InconsistentDatum(String),
    /// A structural theorem failed on data that passed validation.
    #[error("theorem violation: {0}")]
    TheoremViolation(String),
    /// A size guard was exceeded.
    #[error("resource limit: {0}")]
    Resource(String),
    /// An exhaustive search would exceed its guard; no answer was produced.
    #[error("undecided: {0}")]
    Undecided(String),
    /// An internal computation could not be completed.
    #[error("computation failed: {0}")]
    Computation(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

macro_rules! input_err {
    ($($arg:tt)*) => { $crate::error::Error::Input(format!($($arg)*)) };
}
macro_rules! inconsistent {
    ($($arg:tt)*) => { $crate::error::Error::InconsistentDatum(format!($($arg)*)) };
}
macro_rules! violation {
    ($($arg:tt)*) => { $crate::error::Error::TheoremViolation(format!($($arg)*)) };
}

pub(crate) use {inconsistent, input_err, violation};
