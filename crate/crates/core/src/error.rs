use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error at position {position}: {message}")]
    Parse { position: usize, message: String },

    #[error("division by the zero polynomial")]
    DivisionByZero,

    #[error("gcd of two zero polynomials is undefined")]
    GcdOfZeros,

    #[error("operation requires a non-constant polynomial")]
    ConstantPolynomial,

    #[error("polynomial has zero constant term")]
    ZeroConstantTerm,

    #[error("polynomial has repeated irreducible factors")]
    RepeatedFactors,

    #[error("polynomial does not have a uniform exponent")]
    NonUniformExponent,

    #[error("polynomial {0} is not irreducible")]
    NotIrreducible(String),

    #[error("exponent is too large to compute at desk scale")]
    ExponentTooLarge,

    #[error("{0} is even; the multiplicative order of 2 is undefined")]
    EvenModulus(u64),

    #[error("moduli {0} and {1} are not coprime")]
    NotCoprime(u64, u64),

    #[error("field elements belong to different contexts")]
    ContextMismatch,

    #[error("zero has no multiplicative inverse")]
    ZeroInverse,

    #[error("sequence length {length} is shorter than the register length {degree}")]
    SequenceTooShort { length: usize, degree: usize },

    #[error("length mismatch: {0} vs {1}")]
    LengthMismatch(usize, usize),

    #[error("dimension mismatch: {0}x{1} vs {2}x{3}")]
    DimensionMismatch(usize, usize, usize, usize),

    #[error("exponent mismatch: polynomial has exponent {actual}, arrays need {expected}")]
    ExponentMismatch { actual: u64, expected: u64 },

    #[error("window {n1}x{n2} does not fit in a {r1}x{r2} array")]
    WindowTooLarge { n1: usize, n2: usize, r1: usize, r2: usize },

    #[error("window area {0} exceeds the census bound of {max} bits", max = crate::verify::MAX_CENSUS_AREA)]
    CensusTooLarge(usize),

    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("internal consistency failure: {0}")]
    Consistency(String),
}

pub type Result<T> = std::result::Result<T, Error>;
