use kicked_rotor::RotorError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("config error: field `{field}`: {message}")]
    Config { field: String, message: String },

    #[error("{0}")]
    Numerical(RotorError),

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn config(field: impl Into<String>, message: impl Into<String>) -> Self {
        CliError::Config {
            field: field.into(),
            message: message.into(),
        }
    }

    /// 2 for configuration problems, 3 when the numerics give up.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config { .. } => 2,
            CliError::Numerical(e) if e.is_convergence() => 3,
            CliError::Numerical(_) => 2,
            CliError::Io(_) => 1,
        }
    }
}

impl From<RotorError> for CliError {
    fn from(e: RotorError) -> Self {
        CliError::Numerical(e)
    }
}
