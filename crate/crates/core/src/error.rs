use thiserror::Error;

/// Errors raised by every module of the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("modulus mismatch: {left} vs {right}")]
    ModulusMismatch { left: u32, right: u32 },

    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("no formula in scope for {family} with kind {kind}")]
    NoFormula { family: String, kind: String },

    #[error("census envelope exceeded for {spec}: {reason} (estimated order {estimated_order})")]
    EnvelopeExceeded {
        spec: String,
        reason: String,
        estimated_order: String,
    },

    #[error("inapplicable: {0}")]
    Inapplicable(String),

    #[error("verification failed: {0}")]
    Verification(String),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
