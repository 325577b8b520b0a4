//! Error type shared across the toolkit.

use thiserror::Error;

/// Errors produced by evaluators, constructors, probes, and solvers.
#[derive(Debug, Clone, Error, PartialEq)]
pub enum Error {
    /// A vector's length does not match the dimension of the space it is
    /// used with.
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    /// A coordinate is NaN or infinite.
    #[error("non-finite coordinate at index {index}")]
    NonFiniteCoordinate { index: usize },

    /// A vector with no coordinates.
    #[error("vector must have at least one coordinate")]
    EmptyVector,

    /// A constructor or solver parameter outside its admissible range.
    #[error("invalid parameter {name}: {reason}")]
    InvalidParameter {
        name: &'static str,
        reason: String,
    },

    /// Sequence diagnostics need a minimum number of points.
    #[error("sequence window too small: need at least {need} points, got {got}")]
    WindowTooSmall { need: usize, got: usize },

    /// A point required to lie inside an open ball does not.
    #[error("point `{label}` lies outside the open ball: membership value {value} >= radius {radius}")]
    OutsideBall {
        label: &'static str,
        value: f64,
        radius: f64,
    },

    /// |alpha| + |beta| exceeds 1 in an absolute-convexity probe.
    #[error("coefficient bound violated: |alpha| + |beta| = {sum} > 1")]
    CoefficientBound { sum: f64 },

    /// LU elimination hit a pivot below the singularity threshold.
    #[error("matrix is singular: pivot magnitude {pivot:e} below threshold {threshold:e}")]
    SingularMatrix { pivot: f64, threshold: f64 },

    /// An inverse (or preimage oracle) was required but none is available.
    #[error("mapping has no inverse or preimage oracle")]
    NoInverse,

    /// The supplied preimage did not map back to the requested value; this
    /// is the detection mechanism for range-inclusion violations.
    #[error("preimage verification failed at iteration {iteration}: residual {residual:e}")]
    PreimageFailure { iteration: usize, residual: f64 },

    /// Every sampled ratio had a degenerate (near-zero) denominator.
    #[error("all {skipped} sampled ratios were degenerate")]
    DegenerateSamples { skipped: usize },
}

/// Convenience alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn invalid(name: &'static str, reason: impl Into<String>) -> Self {
        Error::InvalidParameter {
            name,
            reason: reason.into(),
        }
    }
}
