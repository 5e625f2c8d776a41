use thiserror::Error;

/// Errors raised by field construction, function algebra, constructions and
/// the import/export layer.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not a prime")]
    NotPrime(u64),

    #[error("characteristic 2 is not supported: planar functions do not exist there")]
    CharacteristicTwo,

    #[error("characteristic {p} is too small: Alltop functions require p >= 5")]
    CharacteristicTooSmall { p: u32 },

    #[error("extension degree must be at least 1")]
    ZeroDegree,

    #[error("field of order {p}^{r} exceeds the supported maximum of {max} elements")]
    FieldTooLarge { p: u32, r: u32, max: u64 },

    #[error("invalid modulus: {0}")]
    InvalidModulus(String),

    #[error("modulus {0:?} is reducible over the prime field")]
    ReducibleModulus(Vec<u32>),

    #[error("operands belong to different fields")]
    FieldMismatch,

    #[error("division by zero")]
    DivisionByZero,

    #[error("element index {index} out of range for a field of order {q}")]
    IndexOutOfRange { index: u64, q: u64 },

    #[error("table has length {found}, expected {expected}")]
    TableLength { expected: usize, found: usize },

    #[error("polynomial is not additive")]
    NotAdditive,

    #[error("condition violated: 3 divides p^r + 1 = {divisor}")]
    ConditionViolated { divisor: u64 },

    #[error("parameter must be nonzero")]
    ZeroParameter,

    #[error("field degree {r} is odd; this construction needs an even-degree extension")]
    OddDegree { r: u32 },

    #[error("cyclotomic orders differ: {left} vs {right}")]
    OrderMismatch { left: u32, right: u32 },

    #[error("function is not planar")]
    NotPlanar,

    #[error("function is not an Alltop function")]
    NotAlltop,

    #[error("signal set must contain at least two vectors, found {0}")]
    DegenerateSet(usize),

    #[error("degree range [{min}, {max}] is invalid for q = {q}: need 2 <= min <= max < q - 1")]
    InvalidRange { min: u64, max: u64, q: u64 },

    #[error(
        "q = {q} exceeds the search cap of {cap}; pass --allow-large or raise ALLTOPLAB_MAX_Q"
    )]
    SearchTooLarge { q: u64, cap: u64 },

    #[error("malformed input: {0}")]
    Malformed(String),

    #[error("parse error at offset {offset}: {message}")]
    Parse { offset: usize, message: String },
}

pub type Result<T> = std::result::Result<T, Error>;
