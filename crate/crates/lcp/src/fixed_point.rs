//! The fixed-point baseline solver
//! x^(k+1) = (I+M)^{-1} (I-M) |x^(k)| - (I+M)^{-1} q,
//! plus its contraction certificate ||D||_2 with D = (I+M)^{-1}(I-M).
//!
//! For symmetric positive definite M the map is a contraction
//! (||D||_2 = rho(D) < 1) and the iteration converges geometrically to the
//! root of F. The solver also runs on matrices outside that class; the
//! report is then flagged `non_contractive` when the certificate is >= 1.

use std::sync::atomic::{AtomicU64, Ordering};

use nalgebra::{DMatrix, DVector};

use crate::config::SolverConfig;
use crate::error::LcpError;
use crate::model::{x_to_zw, LcpProblem};
use crate::report::{IterationRecord, SolveReport, Status};
use crate::smoothing::eval_f;

/// LU factorization of (I + M) with partial pivoting, plus the cached
/// vector c = (I+M)^{-1} q. The inverse is never formed; every application
/// of the iteration map costs exactly one triangular solve pair.
pub struct IterationMatrixFactorization {
    lu: nalgebra::LU<f64, nalgebra::Dyn, nalgebra::Dyn>,
    c: DVector<f64>,
    i_minus_m: DMatrix<f64>,
    n: usize,
    solves: AtomicU64,
}

/// Factorizes (I + M); fails if it is numerically singular.
pub fn factorize(problem: &LcpProblem) -> Result<IterationMatrixFactorization, LcpError> {
    let n = problem.n();
    let eye = DMatrix::identity(n, n);
    let i_plus_m = &eye + problem.m();
    let i_minus_m = &eye - problem.m();
    let lu = i_plus_m.lu();

    let diag_max = (0..n).map(|i| lu.u()[(i, i)].abs()).fold(0.0_f64, f64::max);
    let diag_min = (0..n)
        .map(|i| lu.u()[(i, i)].abs())
        .fold(f64::INFINITY, f64::min);
    // written so that NaN pivots also count as singular
    let well_pivoted = diag_min > 1e-14 * diag_max.max(1.0);
    if !well_pivoted {
        return Err(LcpError::SingularIterationMatrix);
    }

    let c = lu
        .solve(problem.q())
        .ok_or(LcpError::SingularIterationMatrix)?;
    Ok(IterationMatrixFactorization {
        lu,
        c,
        i_minus_m,
        n,
        solves: AtomicU64::new(0),
    })
}

impl IterationMatrixFactorization {
    fn solve_vec(&self, rhs: &DVector<f64>) -> DVector<f64> {
        self.solves.fetch_add(1, Ordering::Relaxed);
        // The factorization was checked for singularity at construction.
        self.lu.solve(rhs).expect("factorization became invalid")
    }

    /// Applies D = (I+M)^{-1}(I-M) to a vector.
    fn apply_d(&self, v: &DVector<f64>) -> DVector<f64> {
        self.solve_vec(&(&self.i_minus_m * v))
    }

    /// Number of triangular solves performed so far (instrumentation; the
    /// iteration-count invariant is tested against this).
    pub fn solve_count(&self) -> u64 {
        self.solves.load(Ordering::Relaxed)
    }
}

/// One application of the iteration map: (I+M)^{-1}(I-M)|x| - (I+M)^{-1}q.
pub fn step(fact: &IterationMatrixFactorization, x: &DVector<f64>) -> DVector<f64> {
    fact.apply_d(&x.abs()) - &fact.c
}

/// Estimates ||D||_2 by power iteration on D^T D.
///
/// For symmetric positive definite M this equals rho(D) and a value < 1
/// certifies the contraction property. The start vector is all-ones plus a
/// small deterministic ramp so it cannot be orthogonal to the dominant
/// eigenvector by symmetry.
pub fn spectral_radius_estimate(
    fact: &IterationMatrixFactorization,
    tol: f64,
    max_iter: usize,
) -> Result<f64, LcpError> {
    let n = fact.n;
    // Form D column by column; at desk scale (n small) this is cheap and
    // lets the power iteration use D^T directly.
    let mut d = DMatrix::zeros(n, n);
    for j in 0..n {
        let mut ej = DVector::zeros(n);
        ej[j] = 1.0;
        d.set_column(j, &fact.apply_d(&ej));
    }

    let mut v = DVector::from_fn(n, |i, _| 1.0 + 0.01 * (i as f64 + 1.0) / n as f64);
    v /= v.norm();
    let mut lambda_prev = f64::INFINITY;
    for _ in 0..max_iter {
        let dv = &d * &v;
        let adv = d.tr_mul(&dv);
        let lambda = v.dot(&adv).max(0.0);
        let norm = adv.norm();
        if norm == 0.0 {
            return Ok(0.0); // D^T D v = 0 with v spanning: D = 0 in practice
        }
        if (lambda - lambda_prev).abs() <= tol * lambda.max(1e-300) {
            return Ok(lambda.sqrt());
        }
        lambda_prev = lambda;
        v = adv / norm;
    }
    Err(LcpError::PowerIterationNoConvergence {
        max_iter,
        best_estimate: lambda_prev.sqrt(),
    })
}

/// Runs the fixed-point iteration from `x0` until ||F(x)||_inf <= eps or
/// `max_iters` updates.
pub fn solve(
    problem: &LcpProblem,
    x0: &DVector<f64>,
    config: &SolverConfig,
) -> Result<SolveReport, LcpError> {
    config.validate()?;
    if x0.len() != problem.n() {
        return Err(LcpError::DimensionMismatch {
            expected: problem.n(),
            found: x0.len(),
        });
    }
    let fact = factorize(problem)?;
    let contraction_estimate = spectral_radius_estimate(&fact, 1e-10, 10_000).ok();
    let non_contractive = contraction_estimate.map(|r| r >= 1.0).unwrap_or(false);

    let mut x = x0.clone();
    let mut records = Vec::new();
    let mut status = Status::MaxIters;

    if eval_f(problem, &x)?.amax() <= config.eps {
        status = Status::Converged;
    } else {
        for k in 1..=config.max_iters {
            x = step(&fact, &x);
            let fvec = eval_f(problem, &x)?;
            let res = fvec.amax();
            let (z, _) = x_to_zw(&x);
            records.push(IterationRecord {
                k,
                x: x.clone(),
                z,
                merit: 0.5 * fvec.norm_squared(),
                residual_f_inf: res,
                direction_kind: None,
                step_length: 1.0,
            });
            if res <= config.eps {
                status = Status::Converged;
                break;
            }
        }
    }

    let (z, _) = x_to_zw(&x);
    let final_residuals = problem.residuals(&z)?;
    Ok(SolveReport {
        status,
        records,
        x,
        final_residuals,
        non_contractive,
        contraction_estimate,
    })
}
