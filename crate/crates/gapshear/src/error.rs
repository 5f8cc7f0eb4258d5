/// Errors surfaced by testers, samplers, and the harness.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// A caller-supplied parameter is outside the documented domain.
    #[error("parameter error: {0}")]
    Parameter(String),
    /// A precondition that callers must establish was violated; the input
    /// does not satisfy the contract the algorithm relies on.
    #[error("contract violation: {0}")]
    Contract(String),
    /// A randomized run exceeded its restart budget.
    #[error("unlucky run: restart budget exhausted after {restarts} restarts")]
    UnluckyRun { restarts: usize },
    /// Input generation could not satisfy its constraints within the retry
    /// budget.
    #[error("generation retries exhausted: {0}")]
    RetriesExhausted(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn parameter(msg: impl Into<String>) -> Self {
        Error::Parameter(msg.into())
    }

    pub(crate) fn contract(msg: impl Into<String>) -> Self {
        Error::Contract(msg.into())
    }
}
