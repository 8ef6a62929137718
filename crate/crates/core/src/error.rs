use thiserror::Error;

use crate::poly::ParseError;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by the zero polynomial")]
    DivisionByZero,

    #[error("gcd(0, 0) is undefined")]
    GcdOfZeros,

    #[error("{0} is undefined for the zero polynomial")]
    ZeroPolynomial(&'static str),

    #[error("{0} needs a nonconstant polynomial")]
    ConstantPolynomial(&'static str),

    #[error("alpha index {index} exceeds the degree {degree}")]
    AlphaOutOfRange { index: usize, degree: usize },

    #[error(transparent)]
    Parse(#[from] ParseError),

    #[error("{0} is not irreducible")]
    Reducible(String),

    #[error("the multiplicative order of x is undefined modulo x")]
    OrderOfX,

    #[error("degree {degree} exceeds the supported bound {bound}")]
    DegreeBound { degree: usize, bound: usize },

    #[error("{0} is not an odd prime")]
    NotOddPrime(u64),

    #[error("{what} = {value} is out of range")]
    OutOfRange { what: &'static str, value: u64 },

    #[error("invalid Mersenne pair ({a}, {b}): both exponents must be positive")]
    InvalidPair { a: u32, b: u32 },

    #[error("1 + x^{a}(x+1)^{b} is not irreducible")]
    NotMersennePrime { a: u32, b: u32 },

    #[error("input is not {0}")]
    NotPerfect(&'static str),

    #[error("{count} prime-power components exceed the enumeration guard of {limit}")]
    TooManyComponents { count: usize, limit: usize },

    #[error("max degree {requested} exceeds the configured cap {cap}")]
    CapExceeded { requested: usize, cap: usize },
}
