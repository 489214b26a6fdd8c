use polyamory::frieze::FriezeError;
use polyamory::{ClusterError, PolyError, QuiverError, SpecError};
use thiserror::Error;

/// Failure of one invocation, grouped by exit code.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("exactness violation: {0}")]
    Exactness(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Input(_) => 2,
            CliError::Exactness(_) => 3,
            CliError::Precondition(_) => 4,
        }
    }
}

impl From<QuiverError> for CliError {
    fn from(e: QuiverError) -> Self {
        CliError::Input(e.to_string())
    }
}

impl From<PolyError> for CliError {
    fn from(e: PolyError) -> Self {
        match e {
            PolyError::VariableOutOfRange(_) | PolyError::AmbientMismatch { .. } => CliError::Input(e.to_string()),
            _ => CliError::Exactness(e.to_string()),
        }
    }
}

impl From<ClusterError> for CliError {
    fn from(e: ClusterError) -> Self {
        match e {
            ClusterError::Quiver(q) => q.into(),
            ClusterError::ZeroCap => CliError::Input(e.to_string()),
            ClusterError::Exactness { .. } | ClusterError::SeedConflict { .. } => CliError::Exactness(e.to_string()),
        }
    }
}

impl From<SpecError> for CliError {
    fn from(e: SpecError) -> Self {
        match e {
            SpecError::Quiver(q) => q.into(),
            SpecError::Poly(p) => p.into(),
            SpecError::TooManyVertices { .. } | SpecError::TruncatedInventory | SpecError::InventoryMismatch { .. } => {
                CliError::Precondition(e.to_string())
            }
            _ => CliError::Input(e.to_string()),
        }
    }
}

impl From<FriezeError> for CliError {
    fn from(e: FriezeError) -> Self {
        match e {
            FriezeError::Poly(p) => p.into(),
            FriezeError::Spec(s) => s.into(),
            FriezeError::NonIntegral { .. } => CliError::Exactness(e.to_string()),
            FriezeError::NotPolyamorous(_) => CliError::Precondition(e.to_string()),
            _ => CliError::Input(e.to_string()),
        }
    }
}
