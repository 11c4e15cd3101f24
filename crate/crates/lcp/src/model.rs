//! Problem data for the linear complementarity problem LCP(M, q) and the
//! transform between the complementary pair (z, w) and the unconstrained
//! variable x.
//!
//! LCP(M, q): find z >= 0 with w = Mz + q >= 0 and z^T w = 0. Substituting
//! z = |x| + x and w = |x| - x turns the problem into root-finding for
//! F(x) = (M+I)x + (M-I)|x| + q, because |x_i|^2 - x_i^2 = 0 makes the
//! complementarity products vanish identically.

use nalgebra::{DMatrix, DVector};

use crate::error::LcpError;

/// A dense LCP instance: square matrix `M` and vector `q`.
#[derive(Debug, Clone, PartialEq)]
pub struct LcpProblem {
    m: DMatrix<f64>,
    q: DVector<f64>,
}

impl LcpProblem {
    /// Validates and wraps problem data.
    ///
    /// Fails if `m` is not square, its dimension does not match `q`, or any
    /// entry is non-finite.
    pub fn new(m: DMatrix<f64>, q: DVector<f64>) -> Result<Self, LcpError> {
        if m.nrows() != m.ncols() {
            return Err(LcpError::NonSquare {
                rows: m.nrows(),
                cols: m.ncols(),
            });
        }
        if m.nrows() != q.len() {
            return Err(LcpError::DimensionMismatch {
                expected: m.nrows(),
                found: q.len(),
            });
        }
        if m.iter().any(|v| !v.is_finite()) {
            return Err(LcpError::NonFinite { place: "M" });
        }
        if q.iter().any(|v| !v.is_finite()) {
            return Err(LcpError::NonFinite { place: "q" });
        }
        Ok(Self { m, q })
    }

    /// Problem dimension n.
    pub fn n(&self) -> usize {
        self.q.len()
    }

    pub fn m(&self) -> &DMatrix<f64> {
        &self.m
    }

    pub fn q(&self) -> &DVector<f64> {
        &self.q
    }

    fn check_len(&self, v: &DVector<f64>) -> Result<(), LcpError> {
        if v.len() != self.n() {
            return Err(LcpError::DimensionMismatch {
                expected: self.n(),
                found: v.len(),
            });
        }
        Ok(())
    }

    /// Solution-quality metrics for a candidate `z`.
    pub fn residuals(&self, z: &DVector<f64>) -> Result<ResidualMetrics, LcpError> {
        self.check_len(z)?;
        let w = &self.m * z + &self.q;
        let gap = z.dot(&w);
        let min_z = z.iter().copied().fold(0.0_f64, f64::min);
        let min_w = w.iter().copied().fold(0.0_f64, f64::min);
        let natural_residual = z
            .iter()
            .zip(w.iter())
            .map(|(&zi, &wi)| zi.min(wi).abs())
            .fold(0.0_f64, f64::max);
        Ok(ResidualMetrics {
            gap,
            min_z,
            min_w,
            natural_residual,
        })
    }
}

/// Feasibility and complementarity measures of a candidate `z`.
///
/// `gap` is the raw inner product z^T(Mz + q), not clamped; `min_z` and
/// `min_w` are the most negative entries (0 when all are nonnegative);
/// `natural_residual` is the infinity norm of componentwise min(z, Mz+q),
/// which is zero exactly at solutions.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ResidualMetrics {
    pub gap: f64,
    pub min_z: f64,
    pub min_w: f64,
    pub natural_residual: f64,
}

impl ResidualMetrics {
    /// Single-tolerance solution test: gap below `tol`, z and w no more than
    /// `tol` below zero.
    pub fn is_solution(&self, tol: f64) -> bool {
        self.gap.abs() <= tol && self.min_z >= -tol && self.min_w >= -tol
    }
}

/// The transform x -> (z, w) with z = |x| + x and w = |x| - x.
///
/// The pair satisfies z >= 0, w >= 0 and z_i * w_i = 0 exactly in floating
/// point, since one of the two factors is exactly zero for every component.
pub fn x_to_zw(x: &DVector<f64>) -> (DVector<f64>, DVector<f64>) {
    let z = x.map(|t| t.abs() + t);
    let w = x.map(|t| t.abs() - t);
    (z, w)
}

/// The inverse transform x = (z - w) / 2.
pub fn zw_to_x(z: &DVector<f64>, w: &DVector<f64>) -> Result<DVector<f64>, LcpError> {
    if z.len() != w.len() {
        return Err(LcpError::DimensionMismatch {
            expected: z.len(),
            found: w.len(),
        });
    }
    Ok((z - w) / 2.0)
}
