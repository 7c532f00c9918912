use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid field: {0}")]
    InvalidField(String),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("field mismatch: {0}")]
    FieldMismatch(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("precondition violated: {0}")]
    PreconditionViolated(String),

    #[error("no regular sequence found after {attempts} attempts")]
    RetriesExhausted { attempts: usize },

    #[error("schema violation at {location}: {message}")]
    SchemaViolation { location: String, message: String },

    #[error("map is not injective on fibers at sample point {point:?}")]
    FiberInjectivityFailed { point: Vec<i64> },

    #[error("resolution is not pure: unexpected syzygies in degree {degree} at step {step}")]
    PurityViolation { step: usize, degree: i64 },

    #[error("Betti number mismatch at step {step}: expected {expected}, found {found}")]
    BettiMismatch {
        step: usize,
        expected: usize,
        found: usize,
    },

    #[error("degree schedule too tight at step {step}: need a degree of at least {minimal}")]
    ScheduleTooTight { step: usize, minimal: i64 },

    #[error("cohomology entry H^{q}(E({t})) is indeterminate")]
    IndeterminateEntry { q: usize, t: i64 },

    #[error("representation map is not injective at sample point {point:?}")]
    NotInjective { point: Vec<i64> },

    #[error("cokernel rank {rank} is below the required {required}")]
    RankTooSmall { rank: i64, required: i64 },

    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub fn schema(location: impl Into<String>, message: impl Into<String>) -> Self {
        Error::SchemaViolation {
            location: location.into(),
            message: message.into(),
        }
    }

    /// Short machine-readable tag used in CLI error objects.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::InvalidField(_) => "InvalidField",
            Error::DimensionMismatch(_) => "DimensionMismatch",
            Error::FieldMismatch(_) => "FieldMismatch",
            Error::InvalidArgument(_) => "InvalidArgument",
            Error::PreconditionViolated(_) => "PreconditionViolated",
            Error::RetriesExhausted { .. } => "RetriesExhausted",
            Error::SchemaViolation { .. } => "SchemaViolation",
            Error::FiberInjectivityFailed { .. } => "FiberInjectivityFailed",
            Error::PurityViolation { .. } => "PurityViolation",
            Error::BettiMismatch { .. } => "BettiMismatch",
            Error::ScheduleTooTight { .. } => "ScheduleTooTight",
            Error::IndeterminateEntry { .. } => "IndeterminateEntry",
            Error::NotInjective { .. } => "NotInjective",
            Error::RankTooSmall { .. } => "RankTooSmall",
            Error::Json(_) => "Json",
        }
    }

    /// Failures that a fresh random sample may cure.
    pub fn is_genericity_failure(&self) -> bool {
        matches!(
            self,
            Error::RetriesExhausted { .. }
                | Error::FiberInjectivityFailed { .. }
                | Error::PurityViolation { .. }
                | Error::BettiMismatch { .. }
                | Error::NotInjective { .. }
        )
    }
}
