use thiserror::Error;

/// Errors produced by problem construction and the solvers.
#[derive(Debug, Error)]
pub enum LcpError {
    #[error("dimension mismatch: expected length {expected}, got {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("matrix must be square: got {rows}x{cols}")]
    NonSquare { rows: usize, cols: usize },

    #[error("non-finite entry in {place}")]
    NonFinite { place: &'static str },

    #[error("I + M is numerically singular; the fixed-point map is undefined")]
    SingularIterationMatrix,

    #[error("power iteration did not converge within {max_iter} iterations (best estimate {best_estimate})")]
    PowerIterationNoConvergence { max_iter: usize, best_estimate: f64 },

    #[error("dimension {n} exceeds the enumeration cap of {cap} (2^n subsets)")]
    DimensionCap { n: usize, cap: usize },

    #[error("invalid solver configuration: {reason}")]
    InvalidConfig { reason: String },

    #[error("line search failed to find an admissible step length")]
    LineSearchFailed,
}
