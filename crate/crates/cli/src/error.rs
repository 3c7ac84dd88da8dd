use heights_core::error::HeightError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("cannot read {path}: {message}")]
    Io { path: String, message: String },
    #[error("invalid workspace JSON: {0}")]
    Json(String),
    #[error("{path}: {source}")]
    Field { path: String, source: HeightError },
    #[error("duplicate {kind} name `{name}`")]
    DuplicateName { kind: &'static str, name: String },
    #[error("unknown {kind} `{name}`")]
    UnknownName { kind: &'static str, name: String },
    #[error("malformed place spec `{spec}`: {message}")]
    PlaceSpec { spec: String, message: String },
    #[error(transparent)]
    Height(#[from] HeightError),
}

impl CliError {
    /// 1 for usage and schema problems, 2 when a point violates a
    /// mathematical precondition. Failed checks exit with 3 without an error.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Height(e) | CliError::Field { source: e, .. } => match e {
                HeightError::OnSubscheme { .. }
                | HeightError::IdenticalPoints
                | HeightError::DegenerateSections { .. }
                | HeightError::IndeterminacyPoint { .. } => 2,
                _ => 1,
            },
            _ => 1,
        }
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;
