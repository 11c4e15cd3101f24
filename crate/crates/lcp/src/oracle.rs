//! Brute-force ground truth: enumerate every complementary support set of a
//! small LCP and collect all isolated solutions.
//!
//! For each subset B of {1..n} the candidate has z = 0 off B and solves the
//! principal subsystem M_BB z_B = -q_B; it is accepted when z_B and the
//! off-support slacks (Mz + q)_i are nonnegative within `tol`. Singular
//! subsystems are skipped silently: they either have no solution or a
//! continuum, and continua are out of scope. Duplicates within `tol` are
//! merged, so a nondegenerate unique solution is reported exactly once.

use nalgebra::{DMatrix, DVector};

use crate::error::LcpError;
use crate::model::LcpProblem;

/// Hard cap on the dimension (the loop visits 2^n subsets).
pub const MAX_ORACLE_DIM: usize = 20;

/// Default feasibility slack and merge tolerance.
pub const DEFAULT_ORACLE_TOL: f64 = 1e-10;

/// One enumerated solution with its support set.
#[derive(Debug, Clone)]
pub struct OracleSolution {
    pub z: DVector<f64>,
    /// Indices (0-based) where z is allowed to be nonzero.
    pub basis: Vec<usize>,
}

/// Enumerates all complementary-basis solutions of the problem.
///
/// Subsets are visited in increasing-cardinality order; the ordering does
/// not affect the returned set (merging is order-independent for isolated
/// solutions).
pub fn enumerate_solutions(
    problem: &LcpProblem,
    tol: f64,
) -> Result<Vec<OracleSolution>, LcpError> {
    let n = problem.n();
    if n > MAX_ORACLE_DIM {
        return Err(LcpError::DimensionCap {
            n,
            cap: MAX_ORACLE_DIM,
        });
    }
    let m = problem.m();
    let q = problem.q();

    let mut masks: Vec<u32> = (0..(1u32 << n)).collect();
    masks.sort_by_key(|mask| mask.count_ones());

    let mut solutions: Vec<OracleSolution> = Vec::new();
    for mask in masks {
        let basis: Vec<usize> = (0..n).filter(|i| mask >> i & 1 == 1).collect();
        let mut z = DVector::zeros(n);
        if !basis.is_empty() {
            let k = basis.len();
            let sub = DMatrix::from_fn(k, k, |r, c| m[(basis[r], basis[c])]);
            let rhs = DVector::from_fn(k, |r, _| -q[basis[r]]);
            let lu = sub.lu();
            let diag_max = (0..k).map(|i| lu.u()[(i, i)].abs()).fold(0.0_f64, f64::max);
            let diag_min = (0..k)
                .map(|i| lu.u()[(i, i)].abs())
                .fold(f64::INFINITY, f64::min);
            // the comparison is written so that NaN pivots also count as singular
            let well_pivoted = diag_min > 1e-14 * diag_max.max(1.0);
            if !well_pivoted {
                continue; // singular subsystem: skip
            }
            let Some(zb) = lu.solve(&rhs) else { continue };
            for (r, &i) in basis.iter().enumerate() {
                z[i] = zb[r];
            }
        }
        let w = m * &z + q;
        if z.iter().all(|&v| v >= -tol) && w.iter().all(|&v| v >= -tol) {
            let duplicate = solutions.iter().any(|s| (&s.z - &z).amax() <= tol);
            if !duplicate {
                solutions.push(OracleSolution { z, basis });
            }
        }
    }
    Ok(solutions)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::test_fixtures::{example1, example2};
    use nalgebra::{DMatrix, DVector};

    #[test]
    fn example1_has_unique_solution() {
        let sols = enumerate_solutions(&example1(), DEFAULT_ORACLE_TOL).unwrap();
        assert_eq!(sols.len(), 1);
        let zstar = DVector::from_vec(vec![1.0, 0.0, 1.0, 0.0]);
        assert!((&sols[0].z - zstar).amax() < 1e-12);
        assert_eq!(sols[0].basis, vec![0, 2]);
    }

    #[test]
    fn example2_has_unique_solution() {
        let sols = enumerate_solutions(&example2(), DEFAULT_ORACLE_TOL).unwrap();
        assert_eq!(sols.len(), 1);
        let zstar = DVector::from_vec(vec![0.0, 15.0 / 29.0, 17.0 / 29.0, 0.0]);
        assert!((&sols[0].z - zstar).amax() < 1e-12);
    }

    #[test]
    fn non_p_matrix_can_have_two_solutions() {
        let prob = LcpProblem::new(
            DMatrix::from_row_slice(1, 1, &[-1.0]),
            DVector::from_vec(vec![1.0]),
        )
        .unwrap();
        let sols = enumerate_solutions(&prob, DEFAULT_ORACLE_TOL).unwrap();
        let mut zs: Vec<f64> = sols.iter().map(|s| s.z[0]).collect();
        zs.sort_by(f64::total_cmp);
        assert_eq!(zs, vec![0.0, 1.0]);
    }

    #[test]
    fn zero_solution_for_nonnegative_q() {
        let prob = LcpProblem::new(
            DMatrix::from_row_slice(2, 2, &[1.0, 2.0, 0.0, 1.0]),
            DVector::from_vec(vec![0.5, 1.0]),
        )
        .unwrap();
        let sols = enumerate_solutions(&prob, DEFAULT_ORACLE_TOL).unwrap();
        assert!(sols.iter().any(|s| s.z.amax() == 0.0));
    }

    #[test]
    fn solutions_pass_residual_check() {
        for prob in [example1(), example2()] {
            for s in enumerate_solutions(&prob, DEFAULT_ORACLE_TOL).unwrap() {
                assert!(prob
                    .residuals(&s.z)
                    .unwrap()
                    .is_solution(10.0 * DEFAULT_ORACLE_TOL));
            }
        }
    }

    #[test]
    fn dimension_cap_enforced() {
        let n = MAX_ORACLE_DIM + 1;
        let prob = LcpProblem::new(DMatrix::identity(n, n), DVector::zeros(n)).unwrap();
        assert!(matches!(
            enumerate_solutions(&prob, DEFAULT_ORACLE_TOL),
            Err(LcpError::DimensionCap { .. })
        ));
    }
}
