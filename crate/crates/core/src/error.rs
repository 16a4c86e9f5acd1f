use thiserror::Error;

use crate::catalog::BoundId;

/// Errors raised by the evaluation, verification and encoding layers.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("field mismatch: cannot combine REAL and COMPLEX operands")]
    FieldMismatch,

    #[error("non-admissible input: {0}")]
    NonAdmissible(String),

    #[error("parameter out of domain: {0}")]
    ParamDomain(String),

    #[error("hypothesis not satisfied: {0}")]
    NotApplicable(String),

    #[error("no constructed equality witness for {0}")]
    NoKnownWitness(BoundId),

    #[error("malformed input: {0}")]
    Malformed(String),
}

impl Error {
    pub(crate) fn non_admissible(msg: impl Into<String>) -> Self {
        Error::NonAdmissible(msg.into())
    }

    pub(crate) fn param(msg: impl Into<String>) -> Self {
        Error::ParamDomain(msg.into())
    }

    /// Stable upper-case code, as used in JSON diagnostics.
    pub fn code(&self) -> &'static str {
        match self {
            Error::DimensionMismatch { .. } => "DIMENSION_MISMATCH",
            Error::FieldMismatch => "FIELD_MISMATCH",
            Error::NonAdmissible(_) => "NON_ADMISSIBLE",
            Error::ParamDomain(_) => "PARAM_DOMAIN",
            Error::NotApplicable(_) => "NOT_APPLICABLE",
            Error::NoKnownWitness(_) => "NO_KNOWN_WITNESS",
            Error::Malformed(_) => "MALFORMED",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
