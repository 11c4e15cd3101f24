//! The hybrid solver: steepest descent on the merit f(p, x) = 1/2 ||F~||^2
//! blended with secant directions built from "vector divisions" — scalars
//! formed from inner products of iterate and residual differences.
//!
//! Per iteration the solver either takes a forced steepest-descent step
//! (every `kstar`-th iteration, which guarantees global convergence) or
//! combines the two secant directions
//!
//! ```text
//! u = xi_1 * F~(p, x_k),     xi_1 = -||dx||^2 / <dx, dF~>
//! v = xi_2 * dx,             xi_2 = -<dF~, F~(p, x_k)> / ||dF~||^2
//! ```
//!
//! into the direction on the line {v + alpha (u - v)} whose cosine with the
//! descent direction d is maximal. A weak Wolfe line search (sufficient
//! decrease plus curvature) picks the step length. Termination is measured
//! on the true nonsmooth residual ||F(x)||_inf.

use nalgebra::DVector;

use crate::config::SolverConfig;
use crate::error::LcpError;
use crate::model::{x_to_zw, LcpProblem};
use crate::report::{DirectionKind, IterationRecord, SolveReport, Status};
use crate::smoothing::{eval_f, eval_f_tilde, merit, merit_gradient, SmoothingParam};

/// Relative floor below which a secant denominator counts as degenerate.
pub const SECANT_DEGENERACY_FLOOR: f64 = 1e-300;

/// Largest step length the bracketing phase will propose.
const GAMMA_CAP: f64 = 1048576.0; // 2^20

/// The steepest descent direction d = -J^T F~ = -grad f.
pub fn descent_direction(
    problem: &LcpProblem,
    p: SmoothingParam,
    x: &DVector<f64>,
) -> Result<DVector<f64>, LcpError> {
    Ok(-merit_gradient(problem, p, x)?)
}

/// The secant direction pair, or a degeneracy marker telling the caller to
/// fall back to d.
#[derive(Debug, Clone)]
pub enum SecantPair {
    Pair { u: DVector<f64>, v: DVector<f64> },
    Degenerate,
}

/// Computes the vector-division secant directions from two iterates.
pub fn secant_directions(
    problem: &LcpProblem,
    p: SmoothingParam,
    x_k: &DVector<f64>,
    x_km1: &DVector<f64>,
) -> Result<SecantPair, LcpError> {
    let fk = eval_f_tilde(problem, p, x_k)?;
    let f_prev = eval_f_tilde(problem, p, x_km1)?;
    Ok(secant_from_deltas(
        &(x_k - x_km1),
        &(fk.clone() - f_prev),
        &fk,
    ))
}

/// Core of [`secant_directions`], operating on the raw differences
/// dx = x_k - x_{k-1} and df = F~(p,x_k) - F~(p,x_{k-1}).
pub fn secant_from_deltas(dx: &DVector<f64>, df: &DVector<f64>, fk: &DVector<f64>) -> SecantPair {
    let den1 = dx.dot(df);
    let den2 = df.norm_squared();
    let floor = SECANT_DEGENERACY_FLOOR * (1.0 + fk.norm_squared());
    if den1.abs() < floor || den2.abs() < floor {
        return SecantPair::Degenerate;
    }
    let xi1 = -dx.norm_squared() / den1;
    let xi2 = -df.dot(fk) / den2;
    SecantPair::Pair {
        u: fk * xi1,
        v: dx * xi2,
    }
}

/// Picks the direction on the line {v + alpha (u - v)} maximizing the cosine
/// with d.
///
/// With a = <v,d> and b = <u-v,d>, the cosine alpha -> Cos[v + alpha(u-v), d]
/// has at most one stationary point, at
/// alpha* = (<v,u-v> a - ||v||^2 b) / (<v,u-v> b - ||u-v||^2 a).
/// When that point exists and has positive alignment it is the global
/// maximum and is returned as `Blend`. When its alignment is nonpositive it
/// is the *minimum*, and the supremum of the cosine is approached as
/// alpha -> +/- infinity along w = sign(b) (u - v), which always satisfies
/// <w,d> = |b| > 0; that limiting direction is returned, also as `Blend`
/// (it dominates the cosine of every finite point on the line, including u,
/// v and the midpoint). Remaining cases: b = 0 with a > 0 gives the midpoint
/// (u+v)/2; everything else falls back to d.
pub fn blend_direction(
    u: &DVector<f64>,
    v: &DVector<f64>,
    d: &DVector<f64>,
) -> (DVector<f64>, DirectionKind) {
    let umv = u - v;
    let a = v.dot(d);
    let b = umv.dot(d);
    if b != 0.0 {
        let c0 = v.norm_squared();
        let c1 = v.dot(&umv);
        let c2 = umv.norm_squared();
        let den = c1 * b - c2 * a;
        if den != 0.0 {
            let alpha = (c1 * a - c0 * b) / den;
            let cand = v + &umv * alpha;
            if alpha.is_finite() && cand.dot(d) > 0.0 {
                return (cand, DirectionKind::Blend);
            }
            let w = &umv * b.signum();
            if w.dot(d) > 0.0 {
                return (w, DirectionKind::Blend);
            }
        }
    } else if a > 0.0 {
        return ((u + v) * 0.5, DirectionKind::Midpoint);
    }
    (d.clone(), DirectionKind::FallbackDescent)
}

/// Weak Wolfe line search along `s` with reference direction `d`:
/// find gamma with
///
/// ```text
/// f(x + gamma s) <= f(x) - gamma rho <d, s>      (sufficient decrease)
/// <grad f(x + gamma s), s> >= -sigma <d, s>      (curvature)
/// ```
///
/// by bracketing: start at gamma = 1, double while the curvature condition
/// fails with decrease intact (capped at 2^20), bisect when decrease fails.
/// Requires `<d, s> > 0`. Each merit or gradient evaluation counts against
/// `config.ls_max_trials`.
pub fn line_search(
    problem: &LcpProblem,
    p: SmoothingParam,
    x: &DVector<f64>,
    s: &DVector<f64>,
    d: &DVector<f64>,
    config: &SolverConfig,
) -> Result<f64, LcpError> {
    let ds = d.dot(s);
    let f0 = merit(problem, p, x)?;
    let mut gamma = 1.0_f64;
    let mut lo = 0.0_f64;
    let mut hi = f64::INFINITY;
    let mut trials = 0usize;
    while trials < config.ls_max_trials {
        let trial_x = x + s * gamma;
        let f1 = merit(problem, p, &trial_x)?;
        trials += 1;
        if f1 > f0 - gamma * config.rho * ds {
            hi = gamma;
            gamma = 0.5 * (lo + hi);
            continue;
        }
        let g1 = merit_gradient(problem, p, &trial_x)?.dot(s);
        trials += 1;
        if g1 >= -config.sigma * ds {
            return Ok(gamma);
        }
        lo = gamma;
        gamma = if hi.is_infinite() {
            (2.0 * gamma).min(GAMMA_CAP)
        } else {
            0.5 * (lo + hi)
        };
    }
    Err(LcpError::LineSearchFailed)
}

/// Runs the hybrid solver from `x0`, seeding the second point as
/// x1 = x0 + 1e-3 d(x0)/max(1, ||d(x0)||).
pub fn solve(
    problem: &LcpProblem,
    x0: &DVector<f64>,
    config: &SolverConfig,
) -> Result<SolveReport, LcpError> {
    config.validate()?;
    let p = SmoothingParam::new(config.p)?;
    let d0 = descent_direction(problem, p, x0)?;
    let x1 = x0 + &d0 * (1e-3 / d0.norm().max(1.0));
    solve_from_pair(problem, x0, &x1, config)
}

/// Runs the hybrid solver from an explicit starting pair (x0, x1).
pub fn solve_from_pair(
    problem: &LcpProblem,
    x0: &DVector<f64>,
    x1: &DVector<f64>,
    config: &SolverConfig,
) -> Result<SolveReport, LcpError> {
    config.validate()?;
    if x0.len() != problem.n() || x1.len() != problem.n() {
        return Err(LcpError::DimensionMismatch {
            expected: problem.n(),
            found: if x0.len() != problem.n() {
                x0.len()
            } else {
                x1.len()
            },
        });
    }
    let p = SmoothingParam::new(config.p)?;

    let finish = |status: Status, records: Vec<IterationRecord>, x: DVector<f64>| {
        let (z, _) = x_to_zw(&x);
        let final_residuals = problem.residuals(&z)?;
        Ok(SolveReport {
            status,
            records,
            x,
            final_residuals,
            non_contractive: false,
            contraction_estimate: None,
        })
    };

    if eval_f(problem, x0)?.amax() <= config.eps {
        return finish(Status::Converged, Vec::new(), x0.clone());
    }

    let mut x_prev = x0.clone();
    let mut x = x1.clone();
    let mut records: Vec<IterationRecord> = Vec::new();

    for k in 1..=config.max_iters {
        if eval_f(problem, &x)?.amax() <= config.eps {
            return finish(Status::Converged, records, x);
        }
        let d = descent_direction(problem, p, &x)?;

        let (mut s, mut kind) = if k % config.kstar == 0 {
            (d.clone(), DirectionKind::SteepestDescent)
        } else {
            match secant_directions(problem, p, &x, &x_prev)? {
                SecantPair::Degenerate => (d.clone(), DirectionKind::FallbackDescent),
                SecantPair::Pair { u, v } => blend_direction(&u, &v, &d),
            }
        };

        let gamma = match line_search(problem, p, &x, &s, &d, config) {
            Ok(g) => g,
            Err(LcpError::LineSearchFailed) if kind != DirectionKind::SteepestDescent => {
                // Retry once along the plain descent direction.
                s = d.clone();
                kind = DirectionKind::FallbackDescent;
                match line_search(problem, p, &x, &s, &d, config) {
                    Ok(g) => g,
                    Err(LcpError::LineSearchFailed) => {
                        return finish(Status::LineSearchFailed, records, x);
                    }
                    Err(e) => return Err(e),
                }
            }
            Err(LcpError::LineSearchFailed) => {
                return finish(Status::LineSearchFailed, records, x);
            }
            Err(e) => return Err(e),
        };

        let x_new = &x + &s * gamma;
        let fvec = eval_f(problem, &x_new)?;
        let (z, _) = x_to_zw(&x_new);
        records.push(IterationRecord {
            k,
            x: x_new.clone(),
            z,
            merit: merit(problem, p, &x_new)?,
            residual_f_inf: fvec.amax(),
            direction_kind: Some(kind),
            step_length: gamma,
        });
        x_prev = x;
        x = x_new;
    }

    if eval_f(problem, &x)?.amax() <= config.eps {
        return finish(Status::Converged, records, x);
    }
    finish(Status::MaxIters, records, x)
}
