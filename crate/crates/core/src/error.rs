use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("{line}:{column}: syntax error: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("{line}:{column}: undeclared symbol `{name}`")]
    UndeclaredSymbol {
        line: usize,
        column: usize,
        name: String,
    },

    #[error("{line}:{column}: arity mismatch for `{name}`: expected {expected}, found {found}")]
    ArityMismatch {
        line: usize,
        column: usize,
        name: String,
        expected: usize,
        found: usize,
    },

    #[error("{line}:{column}: source symbol `{name}` used in a target query")]
    SourceInTarget {
        line: usize,
        column: usize,
        name: String,
    },

    #[error("{line}:{column}: inverse `{name}^-` is only allowed in 2rpq instances")]
    InverseOutsideTwoWay {
        line: usize,
        column: usize,
        name: String,
    },

    #[error("invalid instance: {0}")]
    Invalid(String),

    #[error("no view assigned to source symbol `{0}`")]
    UnassignedSymbol(String),

    #[error("views do not capture the mappings: {0}")]
    NotCapturing(String),

    #[error("{resource} exceeded its cap of {limit}")]
    CapExceeded { resource: &'static str, limit: usize },

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("i/o error: {0}")]
    Io(String),
}

impl Error {
    /// Process exit code used by the command-line tool.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::CapExceeded { .. } => 3,
            _ => 2,
        }
    }

    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::Invalid(msg.into())
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
