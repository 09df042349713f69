use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Parse(String),
    #[error("{operand}: {source}")]
    Operand {
        operand: &'static str,
        #[source]
        source: isotope_core::Error,
    },
    #[error(transparent)]
    Core(#[from] isotope_core::Error),
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

/// The machine-readable form written on failure.
#[derive(Debug, Serialize)]
pub struct ErrorObject {
    pub kind: &'static str,
    pub message: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub operand: Option<&'static str>,
}

impl CliError {
    pub fn kind(&self) -> &'static str {
        match self {
            CliError::Usage(_) => "UsageError",
            CliError::Parse(_) => "ParseError",
            CliError::Operand { source, .. } | CliError::Core(source) => source.kind(),
            CliError::Io { .. } => "IoError",
        }
    }

    /// Every error is a problem with the input; property failures are not
    /// errors and exit with 1 instead.
    pub fn exit_code(&self) -> i32 {
        2
    }

    pub fn to_object(&self) -> ErrorObject {
        let operand = match self {
            CliError::Operand { operand, .. } => Some(*operand),
            _ => None,
        };
        ErrorObject { kind: self.kind(), message: self.to_string(), operand }
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::Parse(e.to_string())
    }
}
