use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{}: {context}: {source}", path.display())]
    Input {
        path: PathBuf,
        context: String,
        source: tdcf_core::Error,
    },

    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },

    #[error(transparent)]
    Core(#[from] tdcf_core::Error),
}

impl CliError {
    /// 2 for a degenerate cost model, 1 for everything else.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Core(tdcf_core::Error::DegenerateCost(_))
            | CliError::Input {
                source: tdcf_core::Error::DegenerateCost(_),
                ..
            } => 2,
            _ => 1,
        }
    }
}
