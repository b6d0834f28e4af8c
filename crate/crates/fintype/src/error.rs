use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not a prime below 2^32")]
    NotPrime(u64),
    #[error("{rows}x{cols} matrix exceeds the {limit}x{limit} size limit")]
    SizeLimit { rows: usize, cols: usize, limit: usize },
    #[error("{what} exceeds the cap of {cap}")]
    Cap { what: String, cap: u128 },
    #[error("unknown key {0}")]
    UnknownKey(String),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid {what}: {reason}")]
    Invalid { what: &'static str, reason: String },
    #[error("rule {rule} does not match at position {position}")]
    NoMatch { rule: String, position: usize },
    #[error("rule {rule}: {reason}")]
    SideCondition { rule: String, reason: String },
    #[error("the closure has {0} components, expected a knot")]
    NotAKnot(usize),
}

impl Error {
    pub(crate) fn invalid(what: &'static str, reason: impl Into<String>) -> Error {
        Error::Invalid { what, reason: reason.into() }
    }

    /// True for errors caused by size limits rather than bad input.
    pub fn is_resource(&self) -> bool {
        matches!(self, Error::SizeLimit { .. } | Error::Cap { .. })
    }
}
