use thiserror::Error;

/// Errors raised anywhere in the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("unknown map `{0}`")]
    UnknownMap(String),
    #[error("syntax error at offset {pos}: {msg}")]
    SyntaxError { pos: usize, msg: String },
    #[error("map is not tangent to the identity: {0}")]
    NotTangentToIdentity(String),
    #[error("map is not in canonical form: {0}")]
    NotCanonical(String),
    #[error("division by the zero polynomial")]
    DivisionByZeroPolynomial,
    #[error("pole hit at x = {0}")]
    PoleHit(String),
    #[error("orbit escaped domain at iterate {index}")]
    OrbitEscaped { index: u64 },
    #[error("orbit length {requested} exceeds the size limit {limit}")]
    SizeLimit { requested: usize, limit: usize },
    #[error("no iteration index N <= 2^40 meets the truncation bound; raise k")]
    InfeasibleParameters,
    #[error("Newton iteration did not converge in {0} steps")]
    NewtonDiverged(u32),
    #[error("ambiguous root: {0}")]
    AmbiguousRoot(String),
    #[error("validation failed: {agreed} digits agreed, {requested} requested")]
    ValidationFailed { agreed: u32, requested: u32 },
    #[error("degenerate step at term {0}: prefix product equals 1")]
    DegenerateStep(usize),
    #[error("non-integral step at term {0}")]
    NonIntegralStep(usize),
    #[error("reparametrization failed at term {0}")]
    ReparametrizationFailed(usize),
    #[error("no sign change across the bracket")]
    NoSignChange,
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
