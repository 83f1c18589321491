//! Crate-wide error type and the CLI exit-code mapping.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("size limit exceeded in {what}: bound {limit}")]
    SizeLimitExceeded { what: String, limit: usize },
    #[error("morphisms {g} and {f} are not composable")]
    NotComposable { g: String, f: String },
    #[error("morphisms are not parallel: {0}")]
    NotParallel(String),
    #[error("morphism {0} is not idempotent")]
    NotIdempotent(u32),
    #[error("simplex map {0} is not surjective")]
    NotSurjective(String),
    #[error("morphism {0} admits no (minus, plus) factorization")]
    NotFactorizable(u32),
    #[error("cycle in the degree relation: {0:?}")]
    CycleDetected(Vec<u32>),
    #[error("relation is not a congruence: {0}")]
    NotACongruence(String),
    #[error("functor does not respect the equivalence: {0}")]
    DoesNotRespectEquivalence(String),
    #[error("functor does not invert weak equivalence {0}")]
    NotWeqInverting(String),
    #[error("transformation is not natural: {0}")]
    NotNatural(String),
    #[error("insufficient truncation: {0}")]
    InsufficientTruncation(String),
    #[error("horn pairing failed for outsider {0}")]
    PairingFailure(String),
    #[error("filling schedule broken at step {step}: {reason}")]
    ScheduleBroken { step: usize, reason: String },
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("i/o error: {0}")]
    Io(String),
}

impl Error {
    /// Process exit code used by the CLI: 2 for input problems, 3 for resource bounds,
    /// 1 for everything that is a failed check.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Parse(_) | Error::Io(_) | Error::Invalid(_) => 2,
            Error::SizeLimitExceeded { .. } | Error::InsufficientTruncation(_) => 3,
            _ => 1,
        }
    }

    pub(crate) fn size(what: impl Into<String>, limit: usize) -> Self {
        Error::SizeLimitExceeded { what: what.into(), limit }
    }
}
