use thiserror::Error;

/// Errors raised by the engine's set, description, container and ornament layers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("unresolved set name `{0}`")]
    UnresolvedName(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("index mismatch: {0}")]
    IndexMismatch(String),
    #[error("carrier overflow: {0}")]
    CarrierOverflow(String),
    #[error("ornament code misaligned with its base: {0}")]
    Alignment(String),
    #[error("morphism is not cartesian: {}", .0.join("; "))]
    NotCartesian(Vec<String>),
    #[error("frame mismatch: {0}")]
    FrameMismatch(String),
    #[error("coherence violation: {0}")]
    CoherenceViolation(String),
    #[error("base mismatch: {0}")]
    BaseMismatch(String),
    #[error("malformed element: {0}")]
    MalformedElement(String),
    #[error("ill-formed: {}", .0.join("; "))]
    IllFormed(Vec<String>),
}

impl Error {
    /// Stable machine-readable code, surfaced by the session frontend.
    pub fn code(&self) -> &'static str {
        match self {
            Error::UnresolvedName(_) => "E-UNRESOLVED",
            Error::Domain(_) => "E-DOMAIN",
            Error::IndexMismatch(_) => "E-INDEX",
            Error::CarrierOverflow(_) => "E-OVERFLOW",
            Error::Alignment(_) => "E-ALIGN",
            Error::NotCartesian(_) => "E-NOTCART",
            Error::FrameMismatch(_) => "E-FRAME",
            Error::CoherenceViolation(_) => "E-COHERENCE",
            Error::BaseMismatch(_) => "E-BASE",
            Error::MalformedElement(_) => "E-ELEMENT",
            Error::IllFormed(_) => "E-ILLFORMED",
        }
    }

    pub(crate) fn ill(msg: impl Into<String>) -> Self {
        Error::IllFormed(vec![msg.into()])
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
