use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("config: {0}")]
    Config(String),
    #[error("no generic context found after {attempts} draws (context #{index})")]
    GenericitySamplingExhausted { index: usize, attempts: usize },
    #[error("degenerate context: {0}")]
    Degenerate(String),
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    /// Every error maps to the configuration/degeneracy exit status.
    pub fn exit_code(&self) -> i32 {
        2
    }
}

impl From<mqh_core::Error> for CliError {
    fn from(e: mqh_core::Error) -> Self {
        CliError::Degenerate(e.to_string())
    }
}
