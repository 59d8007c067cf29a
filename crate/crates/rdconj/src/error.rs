use rdconj_core::bounds::BoundsError;
use rdconj_core::cayley::GraphError;
use rdconj_core::conjugacy::ConjugacyError;
use rdconj_core::group::GroupError;
use rdconj_core::homology::HomologyError;
use rdconj_core::rdalgebra::RdError;
use thiserror::Error;

/// Every failure the command line reports, grouped by exit code.
#[derive(Debug, Error)]
pub enum CliError {
    /// Bad flags, config or group files.
    #[error("config error: {0}")]
    Config(String),
    /// A well-formed request the mathematics rejects.
    #[error("{0}")]
    Domain(String),
    /// A ball, basis or radius cap was hit.
    #[error("resource cap: {0}")]
    Resource(String),
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Domain(_) | CliError::Io(_) => 1,
            CliError::Config(_) => 2,
            CliError::Resource(_) => 3,
        }
    }
}

impl From<GroupError> for CliError {
    fn from(e: GroupError) -> Self {
        match e {
            GroupError::BallOverflow { .. } => CliError::Resource(e.to_string()),
            GroupError::InvalidModel(_) => CliError::Config(e.to_string()),
            _ => CliError::Domain(e.to_string()),
        }
    }
}

impl From<ConjugacyError> for CliError {
    fn from(e: ConjugacyError) -> Self {
        match e {
            ConjugacyError::Group(g) => g.into(),
            ConjugacyError::LengthCap { .. } | ConjugacyError::RadiusOverflow(_) => CliError::Resource(e.to_string()),
            _ => CliError::Domain(e.to_string()),
        }
    }
}

impl From<HomologyError> for CliError {
    fn from(e: HomologyError) -> Self {
        match e {
            HomologyError::Group(g) => g.into(),
            HomologyError::Conjugacy(c) => c.into(),
            HomologyError::BasisOverflow { .. } => CliError::Resource(e.to_string()),
            _ => CliError::Domain(e.to_string()),
        }
    }
}

impl From<GraphError> for CliError {
    fn from(e: GraphError) -> Self {
        match e {
            GraphError::Group(g) => g.into(),
            _ => CliError::Domain(e.to_string()),
        }
    }
}

impl From<RdError> for CliError {
    fn from(e: RdError) -> Self {
        match e {
            RdError::Group(g) => g.into(),
            RdError::LengthCap { .. } => CliError::Resource(e.to_string()),
            RdError::Parse(_) | RdError::InvalidFunction(_) => CliError::Config(e.to_string()),
            _ => CliError::Domain(e.to_string()),
        }
    }
}

impl From<BoundsError> for CliError {
    fn from(e: BoundsError) -> Self {
        CliError::Config(e.to_string())
    }
}
