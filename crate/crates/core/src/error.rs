use thiserror::Error;

/// Errors raised by the library.
///
/// `Internal` marks a broken mathematical invariant; it is never the
/// result of a legal input and indicates a bug.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("gcd(n,q) must be 1 (q={q}, n={n})")]
    NotCoprime { q: u64, n: u64 },

    #[error("q={0} is not a prime power")]
    NotPrimePower(u64),

    #[error("value {value} out of range (must be below {bound})")]
    OutOfRange { value: u128, bound: u128 },

    #[error("division by zero")]
    DivisionByZero,

    #[error("arithmetic overflow: {0}")]
    Overflow(String),

    #[error("too large: {0}")]
    TooLarge(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("weighted sum is {residue} mod {n}, expected 0")]
    NotInF { residue: u64, n: u64 },

    #[error("internal consistency error: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
