//! Shared solver configuration.

use crate::error::LcpError;

/// Tunable constants shared by both solvers.
///
/// The fixed-point solver uses only `eps` and `max_iters`; the hybrid solver
/// uses everything. `rho` and `sigma` are the sufficient-decrease and
/// curvature constants of the weak Wolfe line search and must satisfy
/// 0 < rho < 1/2 and rho < sigma < 1.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolverConfig {
    /// Smoothing sharpness for the surrogate; surrogate error is at most ln(3)/p.
    pub p: f64,
    /// Termination tolerance on the true residual ||F(x)||_inf.
    pub eps: f64,
    /// Restart period: every `kstar`-th iteration forces a steepest-descent step.
    pub kstar: usize,
    /// Sufficient-decrease constant, in (0, 1/2).
    pub rho: f64,
    /// Curvature constant, in (rho, 1).
    pub sigma: f64,
    pub max_iters: usize,
    /// Cap on merit/gradient evaluations per line search.
    pub ls_max_trials: usize,
}

impl Default for SolverConfig {
    fn default() -> Self {
        Self {
            p: 1e8,
            eps: 1e-7,
            kstar: 8,
            rho: 0.1,
            sigma: 0.3,
            max_iters: 500,
            ls_max_trials: 60,
        }
    }
}

impl SolverConfig {
    pub fn validate(&self) -> Result<(), LcpError> {
        let fail = |reason: String| Err(LcpError::InvalidConfig { reason });
        if !(self.p > 0.0 && self.p.is_finite()) {
            return fail(format!("p must be positive and finite, got {}", self.p));
        }
        if !(self.eps > 0.0 && self.eps.is_finite()) {
            return fail(format!("eps must be positive and finite, got {}", self.eps));
        }
        if !(self.rho > 0.0 && self.rho < 0.5) {
            return fail(format!("rho must lie in (0, 1/2), got {}", self.rho));
        }
        if !(self.sigma > self.rho && self.sigma < 1.0) {
            return fail(format!(
                "sigma must lie in (rho, 1) = ({}, 1), got {}",
                self.rho, self.sigma
            ));
        }
        if self.kstar == 0 {
            return fail("kstar must be at least 1".into());
        }
        if self.max_iters == 0 {
            return fail("max_iters must be at least 1".into());
        }
        if self.ls_max_trials == 0 {
            return fail("ls_max_trials must be at least 1".into());
        }
        Ok(())
    }
}
