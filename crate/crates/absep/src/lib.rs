//! File formats, parallel sweeps and command implementations on top of
//! [`absep_core`].

pub mod commands;
pub mod error;
pub mod state_file;
pub mod sweep;

pub use error::CliError;
pub use state_file::StateFile;
