//! The nonsmooth residual F, its log-sum-exp smooth surrogate, and the merit
//! function minimized by the hybrid solver.
//!
//! The surrogate replaces |t| by s_p(t) = (1/p) ln(1 + e^{pt} + e^{-pt}),
//! which satisfies 0 <= s_p(t) - |t| <= ln(3)/p for every t, so the surrogate
//! residual converges uniformly to F as p grows. All formulas are evaluated
//! in rescaled form (factor out e^{p|t|}) so they cannot overflow for any
//! finite p*t.

use nalgebra::{DMatrix, DVector};

use crate::error::LcpError;
use crate::model::LcpProblem;

/// Smoothing sharpness p > 0.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SmoothingParam(f64);

impl SmoothingParam {
    pub fn new(p: f64) -> Result<Self, LcpError> {
        if !(p > 0.0 && p.is_finite()) {
            return Err(LcpError::InvalidConfig {
                reason: format!("smoothing parameter must be positive and finite, got {p}"),
            });
        }
        Ok(Self(p))
    }

    pub fn get(self) -> f64 {
        self.0
    }
}

/// The nonsmooth residual F(x) = (M+I)x + (M-I)|x| + q.
///
/// Roots of F correspond to LCP solutions via z = |x| + x, w = |x| - x.
pub fn eval_f(problem: &LcpProblem, x: &DVector<f64>) -> Result<DVector<f64>, LcpError> {
    check_len(problem, x)?;
    let ax = x.abs();
    // (M+I)x + (M-I)|x| = M(x + |x|) + (x - |x|)
    Ok(problem.m() * (x + &ax) + (x - &ax) + problem.q())
}

/// Overflow-safe scalar smoothing of |t|: (1/p) ln(1 + e^{pt} + e^{-pt}).
///
/// Evaluated as |t| + ln1p(e^{-p|t|} + e^{-2p|t|}) / p; the exponents are
/// never positive, so the result is finite for every finite input. The value
/// lies in [|t|, |t| + ln(3)/p].
pub fn smooth_abs(p: SmoothingParam, t: f64) -> f64 {
    let p = p.get();
    let a = p * t.abs();
    let e = (-a).exp();
    t.abs() + (e + e * e).ln_1p() / p
}

/// The smooth surrogate F~(p, x) = (M+I)x + (M-I)s + q with s_i = smooth_abs(p, x_i).
pub fn eval_f_tilde(
    problem: &LcpProblem,
    p: SmoothingParam,
    x: &DVector<f64>,
) -> Result<DVector<f64>, LcpError> {
    check_len(problem, x)?;
    let s = x.map(|t| smooth_abs(p, t));
    Ok(problem.m() * (x + &s) + (x - &s) + problem.q())
}

/// Diagonal of E(p, x): entry i is (e^{p x_i} - e^{-p x_i}) / (1 + e^{p x_i} + e^{-p x_i}).
///
/// This is the derivative of smooth_abs with respect to x_i. Computed in
/// rescaled form sign(x_i) * (1 - e^{-2a}) / (e^{-a} + 1 + e^{-2a}) with
/// a = p |x_i|; each entry lies in (-1, 1) in exact arithmetic (rounding to
/// +/-1 once e^{-a} underflows below machine precision) and the map is odd.
pub fn eval_e_diag(p: SmoothingParam, x: &DVector<f64>) -> DVector<f64> {
    x.map(|t| e_scalar(p, t))
}

fn e_scalar(p: SmoothingParam, t: f64) -> f64 {
    let a = p.get() * t.abs();
    let e1 = (-a).exp();
    let e2 = e1 * e1;
    let magnitude = (1.0 - e2) / (e1 + 1.0 + e2);
    if t < 0.0 {
        -magnitude
    } else if t > 0.0 {
        magnitude
    } else {
        0.0
    }
}

/// The surrogate Jacobian J(p, x) = (M+I) + (M-I) E(p, x).
pub fn eval_jacobian(
    problem: &LcpProblem,
    p: SmoothingParam,
    x: &DVector<f64>,
) -> Result<DMatrix<f64>, LcpError> {
    check_len(problem, x)?;
    let e = eval_e_diag(p, x);
    let n = problem.n();
    let m = problem.m();
    // Column j: (M + I)_j + (M - I)_j * e_j, i.e. entries
    // M_ij (1 + e_j) + delta_ij (1 - e_j).
    let mut j = DMatrix::zeros(n, n);
    for col in 0..n {
        let ej = e[col];
        for row in 0..n {
            let mut v = m[(row, col)] * (1.0 + ej);
            if row == col {
                v += 1.0 - ej;
            }
            j[(row, col)] = v;
        }
    }
    Ok(j)
}

/// The merit function f(p, x) = 1/2 ||F~(p, x)||^2.
pub fn merit(problem: &LcpProblem, p: SmoothingParam, x: &DVector<f64>) -> Result<f64, LcpError> {
    let ft = eval_f_tilde(problem, p, x)?;
    Ok(0.5 * ft.norm_squared())
}

/// Gradient of the merit function: J(p, x)^T F~(p, x).
pub fn merit_gradient(
    problem: &LcpProblem,
    p: SmoothingParam,
    x: &DVector<f64>,
) -> Result<DVector<f64>, LcpError> {
    let ft = eval_f_tilde(problem, p, x)?;
    let j = eval_jacobian(problem, p, x)?;
    Ok(j.tr_mul(&ft))
}

fn check_len(problem: &LcpProblem, x: &DVector<f64>) -> Result<(), LcpError> {
    if x.len() != problem.n() {
        return Err(LcpError::DimensionMismatch {
            expected: problem.n(),
            found: x.len(),
        });
    }
    Ok(())
}
