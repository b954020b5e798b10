//! Error type shared by every module.

use thiserror::Error;

/// Failures raised by checked operations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// A value would exceed the configured bit budget.
    #[error("bit budget exceeded: {needed} bits requested, budget is {budget}")]
    Budget { needed: u64, budget: u64 },
    /// An argument lies outside the operation's domain.
    #[error("domain error: {0}")]
    Domain(String),
    /// Text input could not be parsed.
    #[error("parse error at {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    /// A free variable has no binding.
    #[error("unbound variable `{0}`")]
    Unbound(String),
    /// An iterative process ran out of its step or iteration budget.
    #[error("step budget of {0} exhausted")]
    StepBudget(u64),
    /// A machine reached a configuration with no applicable command.
    #[error("machine stuck in state {state} reading {read:?}")]
    Stuck { state: usize, read: Vec<u8> },
    /// A stated hypothesis does not hold; carries the clause number.
    #[error("hypothesis {clause} violated: {msg}")]
    Hypothesis { clause: usize, msg: String },
    /// Two computations that must agree did not.
    #[error("mismatch: {0}")]
    Mismatch(String),
}

/// Result alias used across the crate.
pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Shorthand for [`Error::Domain`].
    pub fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}
