use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    #[error("infeasible congestion request: {0}")]
    Infeasible(String),

    #[error("malformed file at line {line}: {reason}")]
    Malformed { line: usize, reason: String },

    #[error("unsupported format version {found} (expected {expected})")]
    VersionMismatch { found: String, expected: u32 },

    #[error("aircraft ids do not match: {0}")]
    IdMismatch(String),

    #[error("unknown aircraft id {0}")]
    UnknownAircraft(usize),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn param(name: &'static str, reason: impl Into<String>) -> Self {
        Error::InvalidParameter { name, reason: reason.into() }
    }

    pub(crate) fn malformed(line: usize, reason: impl Into<String>) -> Self {
        Error::Malformed { line, reason: reason.into() }
    }
}

/// Returns an `InvalidParameter` error unless `cond` holds.
pub(crate) fn ensure(cond: bool, name: &'static str, reason: &str) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::param(name, reason))
    }
}
