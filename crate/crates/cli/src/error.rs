use std::path::PathBuf;

use rgroups_core::Error as CoreError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    /// Malformed document; `location` is a path into it plus line and column.
    #[error("parse error at {location}: {message}")]
    Parse { location: String, message: String },
    /// Well-formed document whose content violates an invariant.
    #[error("validation error at {location}: {source}")]
    Validation {
        location: String,
        #[source]
        source: CoreError,
    },
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] CoreError),
}

impl CliError {
    pub fn validation(location: impl Into<String>, source: CoreError) -> Self {
        CliError::Validation {
            location: location.into(),
            source,
        }
    }

    /// Process exit code: 2 for bad input, 3 for a failed structural
    /// theorem, 4 for a resource guard or undecided search, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        let core = match self {
            CliError::Parse { .. } | CliError::Usage(_) => return 2,
            CliError::Io { .. } => return 1,
            CliError::Validation { source, .. } => source,
            CliError::Core(e) => e,
        };
        match core {
            CoreError::Input(_) | CoreError::InconsistentDatum(_) => 2,
            CoreError::TheoremViolation(_) => 3,
            CoreError::Resource(_) | CoreError::Undecided(_) => 4,
            CoreError::Computation(_) => 1,
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;

/// Attaches a document location to core errors.
pub(crate) trait At<T> {
    fn at(self, location: &str) -> CliResult<T>;
}

impl<T> At<T> for Result<T, CoreError> {
    fn at(self, location: &str) -> CliResult<T> {
        self.map_err(|e| CliError::validation(location, e))
    }
}
