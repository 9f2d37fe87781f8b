use std::path::Path;

use thiserror::Error;

/// Anything that stops a run before a verdict; all map to exit code 1.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] qfoundry::Error),
    #[error("{path}: {message}")]
    Io { path: String, message: String },
    #[error("writing output: {0}")]
    Output(String),
}

impl CliError {
    pub fn io(path: &Path, e: std::io::Error) -> Self {
        Self::Io { path: path.display().to_string(), message: e.to_string() }
    }

    pub fn usage(msg: impl Into<String>) -> Self {
        Self::Usage(msg.into())
    }
}
