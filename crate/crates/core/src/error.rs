use thiserror::Error;

/// Errors raised by graph loading, oracles and the experiment harness.
#[derive(Debug, Error)]
pub enum Error {
    /// Caller passed arguments outside an operation's domain.
    #[error("usage error: {0}")]
    Usage(String),

    /// A graph or partition file failed validation.
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    /// The requested computation exceeds a hard limit of this implementation.
    #[error("capability error: {0}")]
    Capability(String),

    /// Random generation failed to produce a valid object.
    #[error("generation error: {0}")]
    Generation(String),

    /// A pluggable component broke its interface contract.
    #[error("contract violation: {0}")]
    ContractViolation(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

impl Error {
    pub(crate) fn usage(msg: impl Into<String>) -> Self {
        Error::Usage(msg.into())
    }

    pub(crate) fn parse(line: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            line,
            message: msg.into(),
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
