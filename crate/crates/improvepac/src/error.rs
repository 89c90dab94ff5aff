//! Error type shared across the library.
//!
//! Every fallible operation returns [`Result`]; the library never panics on
//! domain errors (mismatched spaces, malformed inputs, unsupported analytic
//! combinations). Panics are reserved for internal invariant violations.

use thiserror::Error;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

/// All error conditions surfaced by the library.
#[derive(Debug, Error)]
pub enum Error {
    /// An instance, concept, or improvement map was used with a space it does
    /// not belong to (e.g. a node index into a Euclidean space, or an index
    /// out of range for a finite space).
    #[error("space mismatch: {0}")]
    SpaceMismatch(String),

    /// A parameter was structurally invalid (empty class, weight vector that
    /// does not normalize, radius that is not finite and positive, ...).
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// A labeled sample is self-contradictory or not realizable by the class
    /// when realizability was required.
    #[error("inconsistent sample: {0}")]
    InconsistentSample(String),

    /// A guarantee that the caller relied on does not hold for the given
    /// inputs, e.g. asking for a least consistent concept when none exists.
    #[error("guarantee unavailable: {0}")]
    GuaranteeUnavailable(String),

    /// An exact (closed-form) computation was requested for a combination of
    /// concept, improvement map, and distribution that only supports
    /// Monte-Carlo evaluation, or vice versa.
    #[error("unsupported combination: {0}")]
    Unsupported(String),

    /// Failure reading, writing, or decoding files and fixtures.
    #[error("io: {0}")]
    Io(#[from] std::io::Error),

    /// Malformed JSON in a config or fixture file.
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// Shorthand for [`Error::SpaceMismatch`] from format arguments.
    pub fn space(msg: impl Into<String>) -> Self {
        Error::SpaceMismatch(msg.into())
    }

    /// Shorthand for [`Error::InvalidParameter`].
    pub fn param(msg: impl Into<String>) -> Self {
        Error::InvalidParameter(msg.into())
    }

    /// Shorthand for [`Error::Unsupported`].
    pub fn unsupported(msg: impl Into<String>) -> Self {
        Error::Unsupported(msg.into())
    }
}
