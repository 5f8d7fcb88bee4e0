use antibidiag::ErrorClass;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] antibidiag::Error),
    #[error("{0}")]
    Usage(String),
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("malformed input document: {0}")]
    Document(String),
    #[error("{failed} of {total} properties failed")]
    PropertyFailures { failed: usize, total: usize },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(e) => match e.class() {
                ErrorClass::Validation => 1,
                ErrorClass::Numerical => 2,
                ErrorClass::Usage => 3,
            },
            CliError::Document(_) => 1,
            CliError::PropertyFailures { .. } => 2,
            CliError::Usage(_) | CliError::Io { .. } => 3,
        }
    }

    /// Stable label printed with the diagnostic.
    pub fn label(&self) -> String {
        match self {
            CliError::Core(e) => {
                let class = match e.class() {
                    ErrorClass::Validation => "validation",
                    ErrorClass::Numerical => "numerical",
                    ErrorClass::Usage => "usage",
                };
                format!("{class}/{}", e.name())
            }
            CliError::Usage(_) => "usage/Usage".into(),
            CliError::Io { .. } => "usage/Io".into(),
            CliError::Document(_) => "validation/Document".into(),
            CliError::PropertyFailures { .. } => "numerical/PropertyFailures".into(),
        }
    }
}
