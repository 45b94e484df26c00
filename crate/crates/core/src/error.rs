use crate::eisenstein::EisensteinInt;

pub type Result<T> = std::result::Result<T, Error>;

/// Every failure mode the library reports. Input validation problems
/// (`NotPrime`, `WrongResidueClass`, `NotPrimitiveRoot`, ...) are the
/// caller's to fix; `Internal` marks a violated invariant that should be
/// treated as a bug in this crate, never swallowed.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("{0} exceeds the supported prime bound 2^31")]
    TooLarge(u64),

    #[error("prime {p} is not congruent to {expected} mod {modulus}")]
    WrongResidueClass { p: u64, expected: u64, modulus: u64 },

    #[error("p = {0} is too small here; the operation needs p > 3")]
    PrimeTooSmall(u64),

    #[error("{g} is not a primitive root modulo {p}")]
    NotPrimitiveRoot { g: u64, p: u64 },

    #[error("division by zero in Z[w]")]
    ZeroDivisor,

    #[error("coordinate overflow in Z[w] arithmetic")]
    Overflow,

    #[error("{0} has norm divisible by 3, so it has no primary associate")]
    NotCoprimeToThree(EisensteinInt),

    #[error("{0} is not primary (need a = 2 and b = 0 mod 3)")]
    NotPrimary(EisensteinInt),

    #[error("k must be nonzero modulo p")]
    ZeroK,

    #[error("no pair (r, s) with r^2 + 3s^2 = 4p, r = 1 mod 3, 3 | s, for p = {0}")]
    NoRepresentation(u64),

    #[error("neither sign of s satisfies the normalizing congruence for p = {0}")]
    NormalizationFailure(u64),

    #[error("sequence is not a bijection on 1..=n")]
    NotABijection,

    #[error("sign exponent is not an integer: 4 does not divide {0}")]
    NonIntegralExponent(i64),

    #[error("internal invariant violated: {0}")]
    Internal(String),
}

impl Error {
    pub(crate) fn internal(msg: impl Into<String>) -> Self {
        Error::Internal(msg.into())
    }
}
