use thiserror::Error;

/// Errors raised by the library. Each variant corresponds to one failure class
/// that the CLI maps onto an exit code.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// An argument lies outside the domain of the operation (zero where a
    /// nonzero value is needed, even where odd is needed, ...).
    #[error("domain error: {0}")]
    Domain(String),

    /// An index or horizon falls outside what a sequence or table covers.
    #[error("range error: {0}")]
    Range(String),

    /// A construction parameter set is inconsistent.
    #[error("configuration error: {0}")]
    Config(String),

    /// A progression fill tried to overwrite an already filled cell.
    #[error("construction error: {0}")]
    Construction(String),

    /// The input lacks structure the operation needs.
    #[error("unsupported input: {0}")]
    Unsupported(String),

    /// A requested size exceeds a configured capacity.
    #[error("capacity exceeded: {0}")]
    Capacity(String),

    /// A bounded search ran out of candidates.
    #[error("search exhausted: {0}")]
    SearchExhausted(String),

    /// Text could not be parsed.
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

macro_rules! domain {
    ($($arg:tt)*) => { $crate::error::Error::Domain(format!($($arg)*)) };
}
macro_rules! range_err {
    ($($arg:tt)*) => { $crate::error::Error::Range(format!($($arg)*)) };
}
pub(crate) use domain;
pub(crate) use range_err;
