use thiserror::Error;

/// Failure of a subcommand, mapped onto the process exit code.
#[derive(Debug, Error)]
pub enum CliError {
    /// Invalid flags or values; exit code 2.
    #[error("{0}")]
    Config(String),

    #[error(transparent)]
    Core(#[from] so5_core::Error),

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn config(msg: impl Into<String>) -> Self {
        CliError::Config(msg.into())
    }
}

impl CliError {
    /// 1 for numerical failures during a run, 2 for anything the caller
    /// can fix by changing the invocation.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Core(
                so5_core::Error::NonFiniteState { .. } | so5_core::Error::NoConvergence(_),
            ) => 1,
            _ => 2,
        }
    }
}
