use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid field: {0}")]
    InvalidField(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("unknown name: {0}")]
    UnknownName(String),
    #[error("degree violation: {0}")]
    Degree(String),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("equivariance violation: {0}")]
    Equivariance(String),
    #[error("Maurer-Cartan residual nonzero: {0}")]
    MaurerCartan(String),
    #[error("not closed under decomposition: {0}")]
    NotClosed(String),
    #[error("differential does not square to zero: {0}")]
    DSquared(String),
    #[error("coderivation law fails: {0}")]
    Coderivation(String),
    #[error("boundedness regime violated: {0}")]
    Regime(String),
    #[error("window not certified: {0}")]
    WindowNotCertified(String),
    #[error("not a chain map: {0}")]
    NotChainMap(String),
    #[error("arity violation: {0}")]
    Arity(String),
    #[error("mismatched objects: {0}")]
    Mismatch(String),
    #[error("characteristic obstruction: {0}")]
    Characteristic(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("validation failed: {0}")]
    Validation(String),
}

impl Error {
    /// The same kind of error with its message rewritten.
    pub fn map_message(self, f: impl FnOnce(String) -> String) -> Error {
        match self {
            Error::InvalidField(m) => Error::InvalidField(f(m)),
            Error::Parse(m) => Error::Parse(f(m)),
            Error::UnknownName(m) => Error::UnknownName(f(m)),
            Error::Degree(m) => Error::Degree(f(m)),
            Error::DimensionMismatch(m) => Error::DimensionMismatch(f(m)),
            Error::Equivariance(m) => Error::Equivariance(f(m)),
            Error::MaurerCartan(m) => Error::MaurerCartan(f(m)),
            Error::NotClosed(m) => Error::NotClosed(f(m)),
            Error::DSquared(m) => Error::DSquared(f(m)),
            Error::Coderivation(m) => Error::Coderivation(f(m)),
            Error::Regime(m) => Error::Regime(f(m)),
            Error::WindowNotCertified(m) => Error::WindowNotCertified(f(m)),
            Error::NotChainMap(m) => Error::NotChainMap(f(m)),
            Error::Arity(m) => Error::Arity(f(m)),
            Error::Mismatch(m) => Error::Mismatch(f(m)),
            Error::Characteristic(m) => Error::Characteristic(f(m)),
            Error::Unsupported(m) => Error::Unsupported(f(m)),
            Error::Validation(m) => Error::Validation(f(m)),
        }
    }
}
