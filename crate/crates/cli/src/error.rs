use std::path::PathBuf;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, CliError>;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("{}: {source}", path.display())]
    Input {
        path: PathBuf,
        #[source]
        source: evocolor::Error,
    },

    #[error("verification failed: {0}")]
    Verification(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) => 2,
            CliError::Io { .. } | CliError::Input { .. } => 3,
            CliError::Verification(_) => 4,
        }
    }
}

impl From<evocolor::Error> for CliError {
    fn from(e: evocolor::Error) -> Self {
        match e {
            evocolor::Error::ImproperColoring(..) | evocolor::Error::IncompleteColoring { .. } => {
                CliError::Verification(e.to_string())
            }
            other => CliError::Config(other.to_string()),
        }
    }
}
