use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    /// A caller broke a documented precondition.
    #[error("contract violation: {0}")]
    Contract(String),

    /// Input file or token could not be parsed. `line` is 1-based; 0 means
    /// no line context.
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("operation not supported for this instance source: {0}")]
    UnsupportedSource(&'static str),

    /// An exhaustive reference routine was asked for more than its budget.
    #[error("exhaustive budget exceeded: n = {n} > {max}")]
    BudgetExceeded { n: usize, max: usize },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn contract(msg: impl Into<String>) -> Self {
        Error::Contract(msg.into())
    }

    pub(crate) fn parse(line: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            line,
            msg: msg.into(),
        }
    }
}
