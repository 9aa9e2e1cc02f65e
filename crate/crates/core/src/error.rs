use thiserror::Error;

/// Errors raised by the library.
///
/// `Input` errors come from malformed or out-of-range user data. The
/// remaining variants signal that a computed object failed a structural
/// property it is supposed to have; for valid input these never occur.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid input: {0}")]
    Input(String),
    #[error("complement of the ideal is infinite: no pure power of {0}")]
    InfiniteComplement(char),
    #[error("oracle cap exceeded: |G| = {order} > cap {cap}")]
    OracleCap { order: usize, cap: usize },
    #[error("theorem violation: {0}")]
    Violation(String),
    #[error("internal error: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
