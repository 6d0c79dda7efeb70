use thiserror::Error;

/// Errors raised by lattice, root-system and Weyl-group operations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// An argument lies outside the domain of the operation (bad rank,
    /// non-root, index out of range, ...).
    #[error("domain error: {0}")]
    Domain(String),

    /// A set of roots does not form a valid ADE configuration.
    #[error("configuration error: {0}")]
    Configuration(String),

    /// A homomorphism violates its defining constraint.
    #[error("constraint error: {0}")]
    Constraint(String),

    /// The operation is not defined for this rank.
    #[error("unsupported: {0}")]
    Unsupported(String),

    /// An enumeration exceeded its size cap.
    #[error("resource error: {what} exceeded the cap of {cap} (reached {partial} elements)")]
    Resource {
        what: String,
        cap: usize,
        partial: usize,
    },

    /// Malformed textual input. `position` is a 0-based character offset.
    #[error("parse error at position {position} in {input:?}: {message}")]
    Parse {
        input: String,
        position: usize,
        message: String,
    },

    /// Arithmetic overflowed the fixed-width representation.
    #[error("overflow: {0}")]
    Overflow(String),

    /// An internal consistency check failed.
    #[error("internal error: {0}")]
    Internal(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn config(msg: impl Into<String>) -> Self {
        Error::Configuration(msg.into())
    }

    pub(crate) fn parse(input: &str, position: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            input: input.to_string(),
            position,
            message: message.into(),
        }
    }
}
