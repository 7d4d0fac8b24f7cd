use thiserror::Error;

/// Errors produced by graph, spectral and estimation routines.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("spectral function undefined on eigenvalue {eigenvalue}: {reason}")]
    DomainError { eigenvalue: f64, reason: String },

    #[error("spectral function is not injective on the spectrum: f({a}) and f({b}) coincide")]
    NonInjectiveSpectrum { a: f64, b: f64 },

    #[error("enumeration budget exceeded: {0}")]
    BudgetExceeded(String),

    #[error("numerical degeneracy: {0}")]
    NumericalDegeneracy(String),

    #[error("division degeneracy: zero variance for edge ({0}, {1})")]
    DivisionDegeneracy(usize, usize),

    #[error("invalid model: {0}")]
    InvalidModel(String),

    #[error("preprocessing degenerate: {0}; consider enabling the ridge regularization flag")]
    PreprocessingDegenerate(String),

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
