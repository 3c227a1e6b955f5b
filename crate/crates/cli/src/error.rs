use inplace_tft::TftError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid modulus or root: {0}")]
    Config(String),
    #[error("size unsupported: {0}")]
    Size(String),
    #[error("{0}")]
    Io(#[from] std::io::Error),
    #[error("selftest failed: {check} (seed {seed})")]
    Selftest { check: String, seed: u64 },
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Parse(_) => 2,
            CliError::Config(_) => 3,
            CliError::Size(_) => 4,
            CliError::Io(_) | CliError::Selftest { .. } => 1,
        }
    }
}

impl From<TftError> for CliError {
    fn from(e: TftError) -> Self {
        match e {
            TftError::InvalidConfig(_) => CliError::Config(e.to_string()),
            TftError::LevelUnsupported { .. } => CliError::Size(e.to_string()),
            TftError::Domain(_) | TftError::InvalidNode { .. } => CliError::Parse(e.to_string()),
        }
    }
}
