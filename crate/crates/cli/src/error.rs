use std::path::PathBuf;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, CliError>;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{field}: {message}")]
    Validation { field: String, message: String },

    #[error("could not parse scenario: {0}")]
    Parse(String),

    #[error(transparent)]
    Library(#[from] qbilliard::Error),

    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl CliError {
    pub fn validation(field: impl Into<String>, message: impl Into<String>) -> Self {
        CliError::Validation {
            field: field.into(),
            message: message.into(),
        }
    }

    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        CliError::Io {
            path: path.into(),
            source,
        }
    }

    /// 1 validation, 2 numeric, 3 I/O.
    pub fn exit_code(&self) -> i32 {
        use qbilliard::Error as E;
        match self {
            CliError::Validation { .. } | CliError::Parse(_) => 1,
            CliError::Io { .. } => 3,
            CliError::Library(e) => match e {
                E::Accuracy { .. }
                | E::NonFinite(_)
                | E::RootIsolation { .. }
                | E::Solver(_)
                | E::InvariantViolation(_) => 2,
                _ => 1,
            },
        }
    }
}
