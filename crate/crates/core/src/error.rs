use thiserror::Error;

use crate::loclin::WeightBranch;

/// Crate-wide error type.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("ring mode must be a positive integer")]
    InvalidMode,
    #[error("duplicate ring mode {0} in term list")]
    DuplicateMode(usize),
    #[error("{name} must be positive, got {value}")]
    NonPositive { name: &'static str, value: f64 },
    #[error("well length must lie in (0, 2pi], got {0}")]
    DegenerateWell(f64),
    #[error("well left edge must lie in [0, 2pi), got {0}")]
    WellLeftOutOfRange(f64),
    #[error("barrier offset alpha must lie in (0, pi/2), got {0}")]
    AlphaOutOfRange(f64),
    #[error(
        "quadrature of {context} did not reach rel_tol {rel_tol:e} within {max_subdivisions} subdivisions"
    )]
    ConvergenceFailure {
        rel_tol: f64,
        max_subdivisions: usize,
        context: String,
    },
    #[error("divergence scan requires a non-nodal point; theta0 = {theta0} is a fixed node")]
    FixedNodeInput { theta0: f64 },
    #[error("extended-state bookkeeping needs a fixed node at one of the two insertion points")]
    NoFixedNode,
    #[error("extended-state bookkeeping is defined for single-eigenstate sources")]
    NotAnEigenstate,
    #[error("angle {theta} lies outside the expansion domain")]
    OutOfDomain { theta: f64 },
    #[error("consistency scan needs a non-empty alpha grid")]
    EmptyGrid,
    #[error("vanishing denominator in the {branch:?} weight at alpha = {alpha}")]
    DenominatorZero { branch: WeightBranch, alpha: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;
