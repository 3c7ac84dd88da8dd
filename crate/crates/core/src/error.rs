use thiserror::Error;

pub type Result<T> = std::result::Result<T, HeightError>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HeightError {
    #[error("valuation of zero is infinite")]
    InfiniteValuation,
    #[error("invalid place: {0}")]
    InvalidPlace(String),
    #[error("prime factor {0} exceeds the supported range (< 2^64)")]
    PrimeTooLarge(String),
    #[error("invalid quadratic field: {0}")]
    InvalidField(String),
    #[error("{d} is not a nonzero square modulo {p}")]
    NotSplit { d: i64, p: u64 },
    #[error("Hensel lifting unsupported for d = {d}, p = {p}")]
    UnsupportedHensel { d: i64, p: u64 },
    #[error("cannot compare values living at different places")]
    MixedPlaceComparison,
    #[error("values from different quadratic fields cannot be combined")]
    MixedFields,
    #[error("parse error at offset {offset}: {message}")]
    Syntax { offset: usize, message: String },
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("polynomial is not multihomogeneous: `{first}` and `{second}` have different multidegrees")]
    NotHomogeneous { first: String, second: String },
    #[error("invalid point: {0}")]
    InvalidPoint(String),
    #[error("ambient mismatch: {0}")]
    AmbientMismatch(String),
    #[error("field mismatch: {0}")]
    FieldMismatch(String),
    #[error("morphism is not defined at the point: target block {block} evaluates to zero")]
    IndeterminacyPoint { block: usize },
    #[error("degree mismatch: {0}")]
    DegreeMismatch(String),
    #[error("invalid presentation: {0}")]
    InvalidPresentation(String),
    #[error("pullback not defined: {0}")]
    PullbackNotDefined(String),
    #[error("point lies on the subscheme (vanishing divisors: {divisors:?})")]
    OnSubscheme { divisors: Vec<usize> },
    #[error("all sections of divisor {divisor} vanish at the point")]
    DegenerateSections { divisor: usize },
    #[error("points are identical")]
    IdenticalPoints,
    #[error("unknown suite `{0}`")]
    UnknownSuite(String),
    #[error("sampling exhausted after {attempts} attempts ({accepted} of {requested} accepted)")]
    SamplingExhausted {
        attempts: usize,
        accepted: usize,
        requested: usize,
    },
    #[error("internal consistency check failed: {0}")]
    Inconsistent(String),
}
