use thiserror::Error;

/// Failures raised by constructions. Law violations are not errors; they are
/// reported as data through [`crate::ValidationReport`].
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Malformed or unknown input (bad identifier, mismatched boundary).
    #[error("input error: {0}")]
    Input(String),
    /// A documented precondition does not hold for the given arguments.
    #[error("contract violated: {0}")]
    Contract(String),
    /// Exhaustive enumeration refused because the search space is too large.
    #[error("enumeration guard exceeded: {candidates} candidate maps, bound is {bound}")]
    Guard { candidates: u128, bound: u128 },
    /// A construction failed its own post-verification. Signals a bug.
    #[error("internal invariant broken: {0}")]
    Invariant(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn input(msg: impl Into<String>) -> Error {
    Error::Input(msg.into())
}

pub(crate) fn contract(msg: impl Into<String>) -> Error {
    Error::Contract(msg.into())
}

pub(crate) fn invariant(msg: impl Into<String>) -> Error {
    Error::Invariant(msg.into())
}
