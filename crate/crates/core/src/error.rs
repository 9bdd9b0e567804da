use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid partition {parts:?}: {reason}")]
    InvalidPartition { parts: Vec<i64>, reason: &'static str },

    #[error("polynomial is not symmetric in its {vars} variables")]
    NotSymmetric { vars: usize },

    #[error("partition {partition} has more than {vars} rows")]
    TooManyRows { partition: String, vars: usize },

    #[error("variable count {0} outside supported range 1..=8")]
    VariableCount(usize),

    #[error("exponent overflow: per-variable exponent would exceed {max}")]
    ExponentOverflow { max: u32 },

    #[error("variable count mismatch: {left} vs {right}")]
    VariableMismatch { left: usize, right: usize },

    #[error("degree mismatch: expected {expected}, found {found}")]
    DegreeMismatch { expected: String, found: String },

    #[error("mixed-degree class where a homogeneous class is required")]
    MixedDegree,

    #[error("negative index {what} = {value}")]
    NegativeIndex { what: &'static str, value: i64 },

    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("context mismatch between Grassmannian classes")]
    ContextMismatch,

    #[error("dimension mismatch in P^n x P^n classes: {left} vs {right}")]
    DimensionMismatch { left: u32, right: u32 },

    #[error("syntax error at offset {offset}: {message}")]
    Syntax { offset: usize, message: String },

    #[error("unknown symbol `{symbol}` at offset {offset}")]
    UnknownSymbol { offset: usize, symbol: String },

    #[error("negative exponent at offset {offset}")]
    NegativeExponent { offset: usize },

    #[error("m vanishes for {0}; the coefficients are undefined")]
    ZeroM(String),

    #[error("m is undefined for negative excess s = {0}")]
    NegativeExcess(i64),

    #[error("expected Fano dimension is {0}, not 0")]
    NonzeroFanoDimension(i64),

    #[error("internal assertion failed: {0}")]
    Assertion(String),
}

impl Error {
    /// True for failures that indicate a bug in the engine rather than bad input.
    pub fn is_internal(&self) -> bool {
        matches!(self, Error::Assertion(_))
    }
}

pub type Result<T> = std::result::Result<T, Error>;
