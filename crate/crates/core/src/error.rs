use thiserror::Error;

/// Errors raised by constructions. Check failures are never errors; they go into reports.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("index out of range: {0}")]
    Index(String),
    #[error("domain mismatch: {0}")]
    Mismatch(String),
    #[error("element {0} is not in the domain")]
    NotInDomain(String),
    #[error("table has no entry for {0}")]
    TableMiss(String),
    #[error("cannot enumerate an infinite carrier: {0}")]
    Infinite(String),
    #[error("monad {0} does not preserve finite sets")]
    Capability(String),
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("no element with the requested faces: {0}")]
    NoPairing(String),
    #[error("enumeration bound exceeded: {0}")]
    Bound(String),
    #[error("depth too shallow: {0}")]
    Depth(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
