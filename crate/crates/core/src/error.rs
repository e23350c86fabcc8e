use thiserror::Error;

/// Errors raised by the calculus, the solvers and the scenario runner.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("chart mismatch: {0} vs {1}")]
    ChartMismatch(String, String),
    #[error("variable index {index} out of range for a chart with {nvars} variables")]
    VariableOutOfRange { index: usize, nvars: usize },
    #[error("division by the zero rational function")]
    DivisionByZero,
    #[error("denominator vanishes identically on the leaf y = 0: {0}")]
    SingularRestriction(String),
    #[error("bivector is horizontally degenerate: det(Pi^X) = 0")]
    HorizontalDegeneracy,
    #[error("geometric data is degenerate: det(F) = 0")]
    DataDegeneracy,
    #[error("coefficient is not polynomial in the fiber variables: {0}")]
    NonPolynomialJet(String),
    #[error("homological target is neither a coboundary nor a cocycle")]
    MalformedTarget,
    #[error("usage error: {0}")]
    Usage(String),
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("unknown example {0:?}")]
    UnknownExample(String),
}

impl Error {
    pub(crate) fn usage(msg: impl Into<String>) -> Self {
        Error::Usage(msg.into())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
