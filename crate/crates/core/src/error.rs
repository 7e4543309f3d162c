use thiserror::Error;

/// Errors raised by region construction, planning and simulation.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DofError {
    #[error("invalid system configuration: {0}")]
    InvalidConfig(String),
    #[error("CSIT quality must lie in [0, 1], got {0}")]
    InvalidAlpha(String),
    #[error("malformed rational {0:?}")]
    ParseRational(String),
    #[error("invalid half-plane: {0}")]
    InvalidHalfPlane(String),
    #[error("region is unbounded along d{0}")]
    UnboundedRegion(u8),
    #[error("boundary lines are parallel or coincident (ad - bc = 0)")]
    DegenerateCorner,
    #[error("{0}")]
    WrongCase(String),
    #[error("weight must lie in [0, 1], got {0}")]
    InvalidWeight(String),
    #[error("infeasible plan: {0}")]
    InfeasiblePlan(String),
    #[error("phase-III needs {needed} streams per slot but only {available} antennas exist")]
    AntennaOverflow { needed: usize, available: usize },
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("noise covariance is not positive definite")]
    SingularCovariance,
    #[error("invalid simulation parameters: {0}")]
    InvalidSimParams(String),
}

impl DofError {
    /// Stable machine-readable code, used by the CLI error line.
    pub fn code(&self) -> &'static str {
        match self {
            DofError::InvalidConfig(_) => "INVALID_CONFIG",
            DofError::InvalidAlpha(_) => "INVALID_ALPHA",
            DofError::ParseRational(_) => "PARSE_RATIONAL",
            DofError::InvalidHalfPlane(_) => "INVALID_HALF_PLANE",
            DofError::UnboundedRegion(_) => "UNBOUNDED_REGION",
            DofError::DegenerateCorner => "DEGENERATE_CORNER",
            DofError::WrongCase(_) => "WRONG_CASE",
            DofError::InvalidWeight(_) => "INVALID_WEIGHT",
            DofError::InfeasiblePlan(_) => "INFEASIBLE_PLAN",
            DofError::AntennaOverflow { .. } => "ANTENNA_OVERFLOW",
            DofError::ShapeMismatch(_) => "SHAPE_MISMATCH",
            DofError::SingularCovariance => "SINGULAR_COVARIANCE",
            DofError::InvalidSimParams(_) => "INVALID_SIM_PARAMS",
        }
    }
}

pub type Result<T> = std::result::Result<T, DofError>;
