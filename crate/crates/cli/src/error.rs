use patchflow_core::Error as CoreError;
use thiserror::Error;

/// Failures of a CLI run, each mapped to a process exit code.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("config error: {0}")]
    Config(String),
    #[error("geometry breakdown: {0}")]
    Breakdown(String),
    #[error("assertion failed: {0}")]
    Assertion(String),
    #[error("{0}")]
    Core(CoreError),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

impl From<CoreError> for CliError {
    fn from(e: CoreError) -> Self {
        match e {
            CoreError::InvalidArgument(m)
            | CoreError::InvalidContour(m)
            | CoreError::Resolution(m)
            | CoreError::UnsupportedGeometry(m) => CliError::Config(m),
            CoreError::SelfIntersecting | CoreError::Degenerate(_) | CoreError::GeometryBreakdown { .. } => {
                CliError::Breakdown(e.to_string())
            }
            CoreError::Io(io) => CliError::Io(io),
            other => CliError::Core(other),
        }
    }
}

impl From<csv::Error> for CliError {
    fn from(e: csv::Error) -> Self {
        CliError::Core(CoreError::Csv(e))
    }
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) => 2,
            CliError::Breakdown(_) => 3,
            CliError::Assertion(_) => 4,
            CliError::Core(_) | CliError::Io(_) => 1,
        }
    }
}
