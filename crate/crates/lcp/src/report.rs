//! Iteration traces and termination reports shared by both solvers.

use nalgebra::DVector;

use crate::model::ResidualMetrics;

/// How the search direction of a hybrid iteration was chosen.
///
/// Fixed-point iterations have no direction choice; their records carry
/// `direction_kind: None`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DirectionKind {
    /// Forced restart: s = d = -grad f.
    SteepestDescent,
    /// Cosine-maximizing combination of the secant directions u and v
    /// (including the limiting direction sign(b)(u - v) when the cosine's
    /// supremum over the line is only attained in the limit).
    Blend,
    /// s = (u + v)/2 when u - v is orthogonal to d and v is descent-aligned.
    Midpoint,
    /// Fallback to s = d when the secant pair is degenerate or rejected.
    FallbackDescent,
}

/// Per-iteration snapshot. `z = |x| + x` entrywise.
#[derive(Debug, Clone)]
pub struct IterationRecord {
    /// 1-based index of the completed update.
    pub k: usize,
    pub x: DVector<f64>,
    pub z: DVector<f64>,
    /// Merit value 1/2 ||F~(p, x)||^2 at this iterate (for the fixed-point
    /// solver, p plays no role and this is 1/2 ||F(x)||^2).
    pub merit: f64,
    /// True residual ||F(x)||_inf at this iterate.
    pub residual_f_inf: f64,
    pub direction_kind: Option<DirectionKind>,
    /// Accepted step length (1.0 for fixed-point steps).
    pub step_length: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Converged,
    MaxIters,
    LineSearchFailed,
}

/// Termination status plus the ordered iteration trace.
#[derive(Debug, Clone)]
pub struct SolveReport {
    pub status: Status,
    pub records: Vec<IterationRecord>,
    /// Final iterate (the x behind the last record, or the start when no
    /// update was needed).
    pub x: DVector<f64>,
    pub final_residuals: ResidualMetrics,
    /// Set by the fixed-point solver when its contraction certificate
    /// ||D||_2 is >= 1 (the run still proceeds; convergence is simply not
    /// guaranteed by the contraction argument).
    pub non_contractive: bool,
    /// The fixed-point solver's estimate of ||D||_2, when available.
    pub contraction_estimate: Option<f64>,
}

impl SolveReport {
    /// Number of completed updates.
    pub fn iterations(&self) -> usize {
        self.records.len()
    }

    /// Final z = |x| + x.
    pub fn z(&self) -> DVector<f64> {
        self.x.map(|t| t.abs() + t)
    }
}
