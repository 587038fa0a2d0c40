use thiserror::Error;

/// Everything that can go wrong while building, solving or reading an instance.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("instance is empty")]
    InstanceEmpty,

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("line {line}: more than {max} fractional digits")]
    Precision { line: usize, max: u32 },

    #[error("line {line}: coordinate magnitude exceeds 2^40 after scaling")]
    Range { line: usize },

    #[error("coordinate {0} exceeds 2^40 in magnitude")]
    CoordOutOfRange(i64),

    #[error("scale exponent {0} exceeds the maximum of 9")]
    ScaleTooLarge(u32),

    #[error("invalid count profile: {0}")]
    InvalidProfile(String),

    #[error("k = {k} is outside 0..={n}")]
    InvalidK { k: i64, n: usize },

    #[error("{0}")]
    UnsupportedProblem(String),

    #[error("bisection requires an even number of points, got n = {n}; use a partition with k = {}", n / 2)]
    OddBisection { n: usize },

    #[error("instance has {profiles} count profiles, above the oracle cap of {cap}")]
    TooLargeForOracle { profiles: u128, cap: u128 },

    #[error("invalid generator spec: {0}")]
    InvalidGenSpec(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("cut values may overflow 128-bit arithmetic for this instance")]
    Overflow,

    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
