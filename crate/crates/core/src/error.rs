use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("t = {t} is not a node of the grid with step {tau}")]
    NotANode { t: f64, tau: f64 },

    #[error("backward difference of order {order} needs {order} + 1 values, got {available}")]
    InsufficientHistory { order: usize, available: usize },

    #[error("refinement differences too small to estimate an order ({coarse:e}, {fine:e})")]
    DegenerateDifference { coarse: f64, fine: f64 },

    #[error("quadrature did not converge (best estimate {estimate}, error estimate {error:e})")]
    NonConvergence { estimate: f64, error: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;
