use thiserror::Error;

/// Errors raised by the simulation kernels.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid mode layout: {0}")]
    InvalidLayout(String),

    #[error("layout mismatch: {left:?} vs {right:?}")]
    LayoutMismatch { left: Vec<usize>, right: Vec<usize> },

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("mode index {mode} out of range for a {modes}-mode layout")]
    InvalidMode { mode: usize, modes: usize },

    #[error("cutoff too small: {0}")]
    CutoffTooSmall(String),

    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: String, reason: String },

    #[error("non-finite value encountered in {0}")]
    NonFinite(&'static str),

    #[error("state has zero norm")]
    ZeroNorm,

    #[error("empty input: {0}")]
    EmptyInput(&'static str),

    #[error("operator is not Hermitian (max deviation {0:.3e})")]
    NotHermitian(f64),

    #[error("norm drift {drift:.3e} at t = {time}")]
    NormDrift { drift: f64, time: f64 },

    #[error("trace drift {drift:.3e} at t = {time}")]
    TraceDrift { drift: f64, time: f64 },

    #[error("positivity violated: min eigenvalue {min_eigenvalue:.3e} at t = {time} (trace {trace:.12})")]
    Positivity {
        min_eigenvalue: f64,
        time: f64,
        trace: f64,
    },

    #[error("integrator failed: {0}")]
    Integrator(String),

    #[error("root finding failed: {0}")]
    RootFinding(String),

    #[error("norm underflow: {0}")]
    NormUnderflow(String),
}

impl Error {
    pub(crate) fn param(name: impl Into<String>, reason: impl Into<String>) -> Self {
        Error::InvalidParameter {
            name: name.into(),
            reason: reason.into(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
