use thiserror::Error;

/// Errors raised by the exact kernels and everything built on them.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("ring mismatch: {0} vs {1}")]
    RingMismatch(String, String),
    #[error("not a unit: {0}")]
    NotUnit(String),
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("no elimination variable")]
    NoEliminationVariable,
    #[error("cannot divide by {0} in {1}")]
    Division(u64, String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("certificate failed: {0}")]
    Certificate(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn pre(cond: bool, msg: impl FnOnce() -> String) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::Precondition(msg()))
    }
}
