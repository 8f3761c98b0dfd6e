use thiserror::Error;

/// Failure modes shared by every module of the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    /// A configured bound was exceeded; `found` is the offending size (or the
    /// partial count reached before giving up).
    #[error("capacity exceeded for {what}: limit {limit}, reached {found}")]
    Capacity {
        what: &'static str,
        limit: usize,
        found: usize,
    },
    #[error("domain error: {0}")]
    Domain(String),
    /// An identity that must hold by construction failed.
    #[error("integrity check `{check}` failed: {witness}")]
    Integrity { check: String, witness: String },
    #[error("parameter error: {0}")]
    Parameter(String),
    #[error("unsupported regime `{regime}`: {reason}")]
    Regime { regime: String, reason: String },
    #[error("structural error: {0}")]
    Structural(String),
    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn integrity(check: impl Into<String>, witness: impl Into<String>) -> Self {
        Error::Integrity {
            check: check.into(),
            witness: witness.into(),
        }
    }

    pub(crate) fn regime(regime: impl Into<String>, reason: impl Into<String>) -> Self {
        Error::Regime {
            regime: regime.into(),
            reason: reason.into(),
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
