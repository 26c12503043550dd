use std::path::Path;

use thiserror::Error;

/// Failure of a command, carrying its process exit code.
#[derive(Debug, Error)]
pub enum CliError {
    /// Malformed input, unreadable or unwritable files, bad flags.
    #[error("{0}")]
    Parse(String),

    /// Input that parses but violates a state or parameter invariant, or a
    /// numerical routine that failed.
    #[error(transparent)]
    Core(#[from] absep_core::Error),
}

impl CliError {
    pub fn io(path: &Path, e: std::io::Error) -> Self {
        CliError::Parse(format!("{}: {e}", path.display()))
    }

    /// 1 for parse errors, 2 for invariant violations, 3 for numerical
    /// failures.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Parse(_) => 1,
            CliError::Core(e) if e.is_numerical() => 3,
            CliError::Core(_) => 2,
        }
    }
}
