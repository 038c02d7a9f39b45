//! Error type shared across the crate.
//!
//! Numerical routines report *why* they gave up, not just that they did:
//! a covariance that fails its Cholesky test is a different problem than a
//! Jacobi sweep cap being exhausted, and callers (in particular the CLI,
//! which maps these onto exit codes) need to tell them apart.

use thiserror::Error;

/// All failure modes of the library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// Two objects that must share a dimension do not.
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    /// A matrix claimed to be symmetric deviates from its transpose by more
    /// than the symmetrization tolerance.
    #[error("matrix is not symmetric (max asymmetry {max_asymmetry:.3e} exceeds tolerance {tolerance:.3e})")]
    NotSymmetric { max_asymmetry: f64, tolerance: f64 },

    /// A matrix required to be positive-definite failed its Cholesky
    /// factorization (some pivot was non-positive or non-finite).
    #[error("matrix is not positive-definite (pivot {pivot:.3e} at index {index})")]
    NotPositiveDefinite { pivot: f64, index: usize },

    /// An iterative routine hit its iteration cap before meeting its
    /// convergence threshold.
    #[error("{routine} did not converge: residual {residual:.3e} after {iterations} iterations")]
    ConvergenceFailure {
        routine: &'static str,
        residual: f64,
        iterations: usize,
    },

    /// A direction vector with zero norm was supplied where a direction is
    /// required.
    #[error("zero vector supplied where a nonzero direction is required")]
    ZeroVector,

    /// A rotation with the requested action does not exist (only arises for
    /// 1-dimensional alignment of a negative scalar, where SO(1) = {1}).
    #[error("no rotation can achieve the requested alignment: {0}")]
    AlignmentImpossible(&'static str),

    /// A method restricted to pairs with equal covariance matrices was given
    /// distributions whose covariances differ beyond tolerance.
    #[error("covariance matrices differ (max deviation {max_deviation:.3e}); method requires equal covariances")]
    CovarianceMismatch { max_deviation: f64 },

    /// A method restricted to pairs with equal means was given distributions
    /// whose means differ beyond tolerance.
    #[error("means differ (max deviation {max_deviation:.3e}); method requires equal means")]
    MeanMismatch { max_deviation: f64 },

    /// A negative value was supplied where only nonnegative ones make sense
    /// (e.g. a distance argument).
    #[error("negative value {value} supplied where a nonnegative one is required")]
    NegativeInput { value: f64 },

    /// An expectation-coordinate pair does not describe any normal
    /// distribution (the implied covariance is not positive-definite).
    #[error("invalid expectation parameters: implied covariance is not positive-definite")]
    InvalidExpectationParam,

    /// A point of the embedding cone was projected back but the result does
    /// not correspond to any normal distribution (recovered covariance not
    /// positive-definite).
    #[error("projection leaves the model: recovered covariance is not positive-definite")]
    ProjectionOutsideModel,

    /// An operation over a collection received no elements.
    #[error("input collection is empty")]
    EmptyInput,

    /// More cluster centers were requested than points are available.
    #[error("requested {k} centers but only {n} points are available")]
    KTooLarge { k: usize, n: usize },

    /// A matrix factor inside the cross-ratio computation is singular, so
    /// the cross-ratio matrix cannot be formed.
    #[error("singular factor encountered while forming the cross-ratio matrix")]
    SingularFactor,

    /// A cross-ratio eigenvalue landed outside the unit interval by more
    /// than the cleanup tolerance, so the distance formula does not apply.
    #[error("cross-ratio eigenvalue {value:.6e} lies outside [0, 1]")]
    InvalidCrossRatio { value: f64 },

    /// A scalar parameter is outside its admissible range.
    #[error("invalid parameter {name}: {reason}")]
    InvalidParameter {
        name: &'static str,
        reason: &'static str,
    },

    /// An input number is NaN or infinite.
    #[error("non-finite value encountered in {context}")]
    NonFinite { context: &'static str },
}

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
