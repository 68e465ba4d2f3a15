use thiserror::Error;

/// Errors raised by constructors and decision procedures.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgError {
    /// A configured size bound was exceeded.
    #[error("budget exceeded: {what} needs {needed}, limit is {limit}")]
    Budget {
        what: &'static str,
        needed: usize,
        limit: usize,
    },
    #[error("invalid input: {0}")]
    Invalid(String),
    /// Inputs live over different rings.
    #[error("ring mismatch: {0}")]
    RingMismatch(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    /// An exhaustive axiom audit found a violation.
    #[error("axiom violated: {0}")]
    Axiom(String),
}

pub type Result<T, E = AlgError> = std::result::Result<T, E>;

pub(crate) fn check_budget(what: &'static str, needed: usize, limit: usize) -> Result<()> {
    if needed > limit {
        Err(AlgError::Budget {
            what,
            needed,
            limit,
        })
    } else {
        Ok(())
    }
}
