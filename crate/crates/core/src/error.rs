use thiserror::Error;

use crate::dsl::ParseError;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("not a Latin square: {axis} {index} repeats value {value}")]
    NotALatinSquare { axis: &'static str, index: usize, value: usize },
    #[error("table is not associative: ({a}*{b})*{c} != {a}*({b}*{c})")]
    NotAssociative { a: usize, b: usize, c: usize },
    #[error("malformed table: {0}")]
    BadTable(String),
    #[error("bad window bounds: need 2 <= L <= M/2, got M={size}, L={operand_bound}")]
    BadBounds { size: usize, operand_bound: usize },
    #[error("set spec parameter out of range: {0}")]
    SpecOutOfRange(String),
    #[error("element {element} outside carrier of size {size}")]
    ElementOutOfRange { element: usize, size: usize },
    #[error("window length {window} invalid for carrier of size {size}")]
    WindowTooLarge { window: usize, size: usize },
    #[error("bad interval [{start}, {end}) with horizon {horizon} in carrier of size {size}")]
    BadInterval { start: usize, end: usize, horizon: usize, size: usize },
    #[error("alpha must satisfy 0 < alpha <= 1, got {0}")]
    BadAlpha(String),
    #[error("set lives on a carrier of size {found}, model has {expected}")]
    ModelMismatch { expected: usize, found: usize },
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("bad core region: {0}")]
    BadCore(String),
    #[error("operation requires an integer window model")]
    UnsupportedModel,
    #[error("{0}")]
    Parse(#[from] ParseError),
    #[error("set file: {0}")]
    SetFile(String),
    #[error("io error on {path}: {message}")]
    Io { path: String, message: String },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    /// Short machine-readable name for reports.
    pub fn code(&self) -> &'static str {
        match self {
            Error::NotALatinSquare { .. } => "NotALatinSquare",
            Error::NotAssociative { .. } => "NotAssociative",
            Error::BadTable(_) => "BadTable",
            Error::BadBounds { .. } => "BadBounds",
            Error::SpecOutOfRange(_) => "SpecOutOfRange",
            Error::ElementOutOfRange { .. } => "ElementOutOfRange",
            Error::WindowTooLarge { .. } => "WindowTooLarge",
            Error::BadInterval { .. } => "BadInterval",
            Error::BadAlpha(_) => "BadAlpha",
            Error::ModelMismatch { .. } => "ModelMismatch",
            Error::InvalidInput(_) => "InvalidInput",
            Error::BadCore(_) => "BadCore",
            Error::UnsupportedModel => "UnsupportedModel",
            Error::Parse(_) => "ParseError",
            Error::SetFile(_) => "SetFileError",
            Error::Io { .. } => "IoError",
        }
    }
}
