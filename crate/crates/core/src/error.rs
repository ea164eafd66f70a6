use thiserror::Error;

/// Errors raised by library entry points.
///
/// Mathematical failures of identities are not errors: they are reported by the
/// verification suites. Errors here are usage problems or violated preconditions.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("ring mismatch: {0}")]
    RingMismatch(String),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("degree overflow: {0}")]
    DegreeOverflow(String),
    #[error("budget exceeded: {what} needs {estimate} items, budget is {budget}")]
    Budget {
        what: String,
        estimate: u128,
        budget: u128,
    },
    #[error("internal fault: {0}")]
    Fault(String),
}

pub type Result<T> = std::result::Result<T, Error>;
