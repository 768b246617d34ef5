use thiserror::Error;

/// Errors raised by semigroup, ideal and filtration computations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("empty generator list")]
    EmptyGenerators,
    #[error("generators must be positive, got {0}")]
    NonPositiveGenerator(i64),
    #[error("gcd of generators is {0}, not 1")]
    GcdNotOne(i64),
    #[error("value {value} exceeds the scan bound {bound} ({context})")]
    Overflow {
        context: &'static str,
        value: i64,
        bound: i64,
    },
    #[error("{0} is not an element of the semigroup")]
    NotMember(i64),
    #[error("element set is not additively closed: {0} + {1} missing")]
    NotClosed(i64, i64),
    #[error("element set does not contain 0")]
    MissingZero,
    #[error("ideals live over different ambient semigroups")]
    AmbientMismatch,
    #[error("ideal is not contained in its ambient semigroup")]
    NotIntegral,
    #[error("ideal contains 0, i.e. it is the whole ring")]
    NotProper,
    #[error("set is not closed under the ambient semigroup: {element} + {generator} missing")]
    NotAnIdeal { element: i64, generator: i64 },
    #[error("apery difference {diff} not divisible by modulus {modulus}")]
    IndivisibleApery { diff: i64, modulus: i64 },
    #[error("no stabilization within {0} steps")]
    NoStabilization(usize),
    #[error("oracle window too small: {0}")]
    WindowTooSmall(String),
    #[error("modulus must be positive, got {0}")]
    BadModulus(i64),
    #[error("{0}")]
    Range(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("io error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;
