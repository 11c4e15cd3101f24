//! Deterministic random test-problem generation (tooling for the CLI `gen`
//! subcommand and the property suites, not part of the solver theory).
//!
//! Instances use M = A^T A + I for a standard-normal A, which is symmetric
//! positive definite with smallest eigenvalue >= 1, so both solvers'
//! convergence guarantees apply and the LCP solution is unique.

use nalgebra::{DMatrix, DVector};
use rand::prelude::*;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::model::LcpProblem;

/// The fixed-seed RNG used everywhere randomness is needed.
pub fn seeded_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Draws a symmetric-positive-definite instance plus a starting point:
/// M = A^T A + I, q ~ 2 N(0,1), x0 ~ N(0,1).
pub fn spd_problem(n: usize, rng: &mut ChaCha8Rng) -> (LcpProblem, DVector<f64>) {
    let a = DMatrix::from_fn(n, n, |_, _| rng.sample::<f64, _>(StandardNormal));
    let m = a.transpose() * &a + DMatrix::identity(n, n);
    let q = DVector::from_fn(n, |_, _| 2.0 * rng.sample::<f64, _>(StandardNormal));
    let x0 = DVector::from_fn(n, |_, _| rng.sample::<f64, _>(StandardNormal));
    let problem = LcpProblem::new(m, q).expect("generated data is finite and square");
    (problem, x0)
}
