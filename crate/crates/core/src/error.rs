use thiserror::Error;

/// Errors raised by every operation in the crate.
///
/// The variants map one-to-one onto the CLI exit codes and the FFI status
/// codes (see [`Error::exit_code`]).
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// The input is well formed but lies outside the operation's domain.
    #[error("domain error: {0}")]
    Domain(String),
    /// Malformed or mismatched parameters.
    #[error("parameter error: {0}")]
    Parameter(String),
    /// An enumeration exceeded its resource guard.
    #[error("resource guard exceeded: {0}")]
    Resource(String),
    /// An internal consistency check failed. Signals a bug.
    #[error("invariant violation: {0}")]
    Invariant(String),
}

impl Error {
    pub fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub fn parameter(msg: impl Into<String>) -> Self {
        Error::Parameter(msg.into())
    }

    pub fn resource(msg: impl Into<String>) -> Self {
        Error::Resource(msg.into())
    }

    pub fn invariant(msg: impl Into<String>) -> Self {
        Error::Invariant(msg.into())
    }

    /// Process exit code: 1 domain, 2 parameter, 3 resource guard.
    /// Invariant violations share the domain code.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Domain(_) | Error::Invariant(_) => 1,
            Error::Parameter(_) => 2,
            Error::Resource(_) => 3,
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
