use thiserror::Error;

/// Errors raised by state construction, conditioning and work evaluation.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("covariance matrix must be square with even dimension between 2 and 6, got {rows}x{cols}")]
    InvalidDimension { rows: usize, cols: usize },

    #[error("covariance matrix is not symmetric (max asymmetry {0:e})")]
    NotSymmetric(f64),

    #[error("covariance matrix has a non-finite entry")]
    NonFinite,

    #[error("covariance matrix is not positive definite")]
    NonPositiveDefinite,

    #[error("determinant {0:e} is not positive")]
    NonPositiveDeterminant(f64),

    #[error("invalid mode set {modes:?} for a {n_modes}-mode state")]
    InvalidModeSet { modes: Vec<usize>, n_modes: usize },

    #[error("sigma_B + gamma is singular; conditioning is undefined")]
    SingularConditioning,

    #[error("unphysical state: {0}")]
    Unphysical(String),

    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("invalid pure tripartite triple: {0}")]
    InvalidTriple(String),

    #[error("unsupported mode count {0} (expected 2 or 3)")]
    UnsupportedModeCount(usize),

    #[error("measurement strength must be nonnegative, got {0}")]
    InvalidStrength(f64),

    #[error("angle average did not converge after {nodes} nodes (last change {last_delta:e})")]
    QuadratureFailure { nodes: usize, last_delta: f64 },

    #[error("sampler acceptance too low: {accepted} accepted out of {attempts} draws")]
    LowAcceptance { accepted: usize, attempts: usize },
}

pub type Result<T> = std::result::Result<T, Error>;
