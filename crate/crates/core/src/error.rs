use thiserror::Error;

use crate::report::ValidationReport;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    /// Table entries out of range, wrong dimensions, unknown names.
    #[error("malformed input: {0}")]
    Malformed(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// A constructed carrier or an enumeration exceeded the configured limit.
    #[error("resource limit exceeded during {stage}: size {size} > cap {cap}")]
    Resource { stage: String, size: u128, cap: u128 },

    #[error("precondition failed: {0}")]
    Precondition(String),

    /// Structural laws failed for an object that was required to be lawful.
    #[error("law violation in {}: {}", .0.subject, .0.first_violation().unwrap_or_default())]
    Laws(Box<ValidationReport>),

    /// A name that is not declared, or declared with another kind.
    #[error("unresolved name: {0}")]
    Unresolved(String),

    #[error(transparent)]
    Parse(#[from] crate::text::ParseError),

    #[error("objects do not match: {0}")]
    Mismatch(String),

    /// Something a theorem guarantees did not happen. Always a bug.
    #[error("internal consistency failure: {0}")]
    Internal(String),
}

impl Error {
    pub fn resource(stage: impl Into<String>, size: u128, cap: usize) -> Self {
        Error::Resource { stage: stage.into(), size, cap: cap as u128 }
    }
}
