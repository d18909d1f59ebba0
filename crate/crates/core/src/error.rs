use thiserror::Error;

/// Errors raised across the crate.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum Error {
    #[error("extension degree {0} is outside the supported range 1..=16")]
    DegreeOutOfRange(u32),
    #[error("polynomial {0:#x} has degree 0")]
    ConstantPolynomial(u32),
    #[error("modulus {modulus:#x} does not have degree {n}")]
    ModulusDegree { modulus: u32, n: u32 },
    #[error("modulus {0:#x} is reducible over GF(2)")]
    ReducibleModulus(u32),
    #[error("zero has no multiplicative inverse")]
    ZeroInverse,
    #[error("value table has length {got}, expected {expected}")]
    TableLength { got: usize, expected: usize },
    #[error("table entry {value:#x} at index {index} is not an element of GF(2^{n})")]
    EntryOutOfRange { index: usize, value: u32, n: u32 },
    #[error("exponent {exp} is outside 0..={max}")]
    ExponentOutOfRange { exp: u64, max: u64 },
    #[error("exponent {0} appears more than once")]
    DuplicateExponent(u64),
    #[error("coefficient of x^{0} is zero")]
    ZeroCoefficient(u64),
    #[error("vector length {0} is not a power of two")]
    NotPowerOfTwo(usize),
    #[error("{what} is limited to n <= {max} (got n = {n}); {hint}")]
    ResourceCap {
        what: &'static str,
        n: u32,
        max: u32,
        hint: &'static str,
    },
    #[error("duplicate point in collinearity test")]
    DuplicatePoints,
    #[error("(0,0,0) is not a projective point")]
    ZeroPoint,
    #[error("moment order {0} is not supported (expected 1, 2 or 3)")]
    UnsupportedMoment(u32),
    #[error("unknown family `{0}`")]
    UnknownFamily(String),
    #[error("family {family} is not defined for n = {n}")]
    InvalidFamilyDegree { family: String, n: u32 },
    #[error("exponent denominator {den} is not invertible modulo {modulus}")]
    NonInvertibleExponent { den: u64, modulus: u64 },
    #[error("internal consistency failure: {0}")]
    Inconsistent(String),
    #[error("{0}")]
    Parse(String),
    #[error("{0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;
