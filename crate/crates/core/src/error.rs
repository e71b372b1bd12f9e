use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{what} must be nonnegative, got {value}")]
    Negative { what: &'static str, value: i64 },

    #[error("root order must be an odd integer >= 3, got {0}")]
    InvalidRootOrder(i64),

    /// The denominator vanishes at `q = exp(2 pi i / n)` after all common
    /// cyclotomic factors have been cancelled.
    #[error("pole at q = zeta_{n}, a primitive root of unity of order {n}")]
    PoleAtRoot { n: u32 },

    #[error("division by zero")]
    DivisionByZero,

    #[error("element contains a derivative generator; only theta and eps are allowed here")]
    ContainsDerivative,

    #[error("element contains eps; only theta is allowed here")]
    ContainsEps,

    #[error("expected a scalar, found an element with generators")]
    NotScalar,

    #[error("{0}")]
    OutOfRange(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
