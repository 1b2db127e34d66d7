use thiserror::Error;

/// Errors surfaced by the analysis engine.
///
/// Budget and validation failures are kept distinct from mathematical
/// property violations so that callers (in particular the CLI) can map them
/// onto different exit codes.
#[derive(Debug, Error)]
pub enum Error {
    #[error("element cap of {cap} exceeded while closing the monoid")]
    CapExceeded { cap: usize },

    #[error("operation requires an R-trivial monoid; {witness}")]
    NotRTrivial { witness: String },

    #[error("probability assignment is not stochastic: {0}")]
    NotStochastic(String),

    #[error("probability assignment is not adapted: support generates a submonoid missing the minimal ideal")]
    NotAdapted,

    #[error("walk is not ergodic: {0}")]
    NotErgodic(String),

    #[error("monoid is not Karnofsky-Rhodes: {0}")]
    NotKarnofskyRhodes(String),

    #[error("monoid is not a left regular band: {0}")]
    NotLeftRegularBand(String),

    #[error("monoid contains no constant transformation")]
    NoConstants,

    #[error("budget of {budget} {unit} exceeded")]
    BudgetExceeded { budget: u64, unit: &'static str },

    #[error("eigenvalue multiplicities do not sum to the action size: got {got}, expected {expected}")]
    MultiplicityMismatch { got: String, expected: usize },

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("unknown model '{0}'")]
    UnknownModel(String),

    #[error("unsupported Coxeter type '{0}'")]
    UnsupportedType(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("precondition violated: {0}")]
    Precondition(String),
}

pub type Result<T> = std::result::Result<T, Error>;
