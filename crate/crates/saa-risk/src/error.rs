use thiserror::Error;

/// Errors surfaced by the risk-measure and solver layers.
#[derive(Debug, Error)]
pub enum Error {
    #[error("empty sample")]
    EmptySample,
    #[error("sample contains a non-finite value")]
    NonFiniteSample,
    #[error("objective overflow: exponential argument {0} exceeds the floating range")]
    ObjectiveOverflow(f64),
    #[error("numeric overflow while minimizing the certainty-equivalent objective")]
    NumericOverflow,
    #[error("bracket unavailable: generator has no anchor point")]
    BracketUnavailable,
    #[error("unbounded support: quantile function is non-finite at grid nodes")]
    UnboundedSupport,
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("invalid piecewise-linear instance: {active} pieces active at theta={theta:?}, z={z:?}")]
    InvalidPlInstance {
        theta: Vec<f64>,
        z: Vec<f64>,
        active: usize,
    },
    #[error("invalid solver configuration: {0}")]
    InvalidConfig(String),
    #[error("Hessian is not positive definite (min eigenvalue {min_eigenvalue:.3e})")]
    HessianNotPositiveDefinite { min_eigenvalue: f64 },
    #[error("subgradient selection hit a nondifferentiable point too often ({rejected} of {total} draws)")]
    KinkFractionExceeded { rejected: usize, total: usize },
    #[error("population minimizer is not unique within tolerance")]
    NonUniqueMinimizer,
    #[error("insufficient data: {0}")]
    InsufficientData(String),
    #[error("predicted variance is not positive in coordinate {0}")]
    NonPositiveVariance(usize),
}

pub type Result<T> = std::result::Result<T, Error>;
