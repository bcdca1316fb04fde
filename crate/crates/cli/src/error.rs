use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    /// Bad or inconsistent configuration; the message starts with the key path.
    #[error("config error: {0}")]
    Config(String),
    #[error("numeric failure: {0}")]
    Numeric(String),
    #[error("{0}")]
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Config(_) => 2,
            CliError::Numeric(_) | CliError::Io(_) => 1,
        }
    }

    pub fn config(key: &str, msg: impl std::fmt::Display) -> Self {
        CliError::Config(format!("{key}: {msg}"))
    }
}

/// Maps a core error raised while building from the block at `prefix`.
pub fn at_key(prefix: &str, e: gyrosurf::Error) -> CliError {
    match e {
        gyrosurf::Error::InvalidParameter { name, reason } => {
            CliError::config(&format!("{prefix}.{name}"), reason)
        }
        other => CliError::config(prefix, other),
    }
}

impl From<gyrosurf::Error> for CliError {
    fn from(e: gyrosurf::Error) -> Self {
        CliError::Numeric(e.to_string())
    }
}
