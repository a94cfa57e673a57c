use thiserror::Error;

/// Errors raised by the coding library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("zero has no multiplicative inverse")]
    ZeroInverse,
    #[error("operands live in different fields (q={0} and q={1})")]
    FieldMismatch(u32, u32),
    #[error("symbol {0:?} is outside the alphabet")]
    BadSymbol(String),
    #[error("unsupported field: {0}")]
    UnsupportedField(String),
    #[error("operation undefined for the zero element: {0}")]
    ZeroElement(&'static str),
    #[error("search exhausted: {0}")]
    SearchExhausted(String),
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("index {index} out of range for length {len}")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("length mismatch: {0} != {1}")]
    LengthMismatch(usize, usize),
    #[error("invalid code: {0}")]
    InvalidCode(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("capacity exceeded: {0}")]
    Capacity(String),
    #[error("decoding failed: {0}")]
    Decode(String),
}

pub type Result<T> = std::result::Result<T, Error>;
