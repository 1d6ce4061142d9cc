use thiserror::Error;

/// Errors raised by every module of the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("text is empty")]
    EmptyText,
    #[error("pattern is empty")]
    EmptyPattern,
    #[error("pattern of length {m} is longer than text of length {n}")]
    PatternTooLong { m: usize, n: usize },
    #[error("position {pos} out of range for length {len}")]
    PositionOutOfRange { pos: usize, len: usize },
    #[error("offset {offset} out of range, must be at most {max}")]
    OffsetOutOfRange { offset: usize, max: usize },
    #[error("symbol {0} is not in the alphabet")]
    UnknownSymbol(u32),
    #[error("symbol code {0} is reserved for padding")]
    ReservedSymbol(u32),
    #[error("k-gram width must be 2 or 3, got {0}")]
    InvalidKgram(usize),
    #[error("k-gram width {k} exceeds pattern length {m}")]
    KgramTooWide { k: usize, m: usize },
    #[error("register {j} out of range 1..={m}")]
    RegisterOutOfRange { j: usize, m: usize },
    #[error("indicator has length {got}, expected {expected}")]
    IndicatorLength { got: usize, expected: usize },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("invalid circuit: {0}")]
    InvalidCircuit(String),
    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("resource limit exceeded: {0}")]
    ResourceLimit(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

/// Coarse classification used by front ends to pick exit codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorKind {
    Domain,
    Resource,
    Io,
}

impl Error {
    pub fn kind(&self) -> ErrorKind {
        match self {
            Error::ResourceLimit(_) => ErrorKind::Resource,
            Error::Io(_) => ErrorKind::Io,
            _ => ErrorKind::Domain,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
