use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] sumcore::Error),
    #[error("config: {0}")]
    Config(String),
    #[error("witness json: {0}")]
    WitnessJson(String),
    #[error("missing required option --{0}")]
    Missing(&'static str),
    #[error("emitted {0} failed its own verification")]
    Verification(&'static str),
    #[error("csv output is only available for growth and density schedules")]
    CsvUnsupported,
    #[error("io error on {path}: {message}")]
    Io { path: String, message: String },
    #[error("output encoding: {0}")]
    Encode(String),
}

impl CliError {
    pub fn code(&self) -> &'static str {
        match self {
            CliError::Core(e) => e.code(),
            CliError::Config(_) => "ConfigError",
            CliError::WitnessJson(_) => "WitnessJsonError",
            CliError::Missing(_) => "MissingOption",
            CliError::Verification(_) => "VerificationFailed",
            CliError::CsvUnsupported => "CsvUnsupported",
            CliError::Io { .. } => "IoError",
            CliError::Encode(_) => "EncodeError",
        }
    }
}

pub type Result<T, E = CliError> = std::result::Result<T, E>;
