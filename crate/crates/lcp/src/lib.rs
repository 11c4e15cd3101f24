//! Dense solvers for the linear complementarity problem (LCP).
//!
//! LCP(M, q) asks for z >= 0 with w = Mz + q >= 0 and z^T w = 0. This crate
//! works with the equivalent unconstrained root problem
//! F(x) = (M+I)x + (M-I)|x| + q = 0, where z = |x| + x and w = |x| - x, and
//! offers:
//!
//! * [`fixed_point`] — the contraction iteration
//!   x <- (I+M)^{-1}((I-M)|x| - q), geometrically convergent whenever
//!   ||D||_2 < 1 for D = (I+M)^{-1}(I-M) (always true for symmetric positive
//!   definite M), plus a power-iteration certificate for that norm;
//! * [`hybrid`] — a line-search method on the smooth merit
//!   f(p, x) = 1/2 ||F~(p, x)||^2, where F~ replaces |t| by the log-sum-exp
//!   surrogate (1/p) ln(1 + e^{pt} + e^{-pt}), blending steepest descent
//!   with secant directions built from vector divisions;
//! * [`oracle`] — brute-force support enumeration for small instances,
//!   used as ground truth in the test suite;
//! * [`io`] — a JSON problem-file format shared with the `lcpkit` CLI.
//!
//! # Example: solving a 4x4 instance both ways
//!
//! ```
//! use lcpkit::{LcpProblem, SolverConfig, fixed_point, hybrid};
//! use nalgebra::{DMatrix, DVector};
//!
//! let m = DMatrix::from_row_slice(4, 4, &[
//!     8.0, -1.0, 0.0, -5.0,
//!     1.0, 5.0, -1.0, 0.0,
//!     2.0, -1.0, 6.0, -1.0,
//!     6.0, 0.0, -1.0, 7.0,
//! ]);
//! let q = DVector::from_vec(vec![1.0, -2.0, -3.0, 4.0]);
//! let problem = LcpProblem::new(m, q).unwrap();
//! let x0 = DVector::from_vec(vec![-1.0, -2.0, -3.0, -4.0]);
//! let config = SolverConfig::default();
//!
//! let fp = fixed_point::solve(&problem, &x0, &config).unwrap();
//! let hy = hybrid::solve(&problem, &x0, &config).unwrap();
//!
//! let zstar = DVector::from_vec(vec![0.0, 15.0 / 29.0, 17.0 / 29.0, 0.0]);
//! assert!((fp.z() - &zstar).amax() < 1e-6);
//! assert!((hy.z() - &zstar).amax() < 1e-6);
//! assert!(hy.iterations() < fp.iterations());
//! ```
//!
//! # Example: checking a candidate with residual metrics
//!
//! ```
//! use lcpkit::{LcpProblem, x_to_zw};
//! use nalgebra::{DMatrix, DVector};
//!
//! let problem = LcpProblem::new(
//!     DMatrix::identity(2, 2),
//!     DVector::from_vec(vec![-2.0, 1.0]),
//! ).unwrap();
//! let (z, _w) = x_to_zw(&DVector::from_vec(vec![1.0, -0.5]));
//! let r = problem.residuals(&z).unwrap();
//! assert!(r.is_solution(1e-12));
//! ```
//!
//! # Example: ground truth by enumeration
//!
//! ```
//! use lcpkit::{LcpProblem, oracle};
//! use nalgebra::{DMatrix, DVector};
//!
//! // A non-P matrix can have several solutions; enumeration finds them all.
//! let problem = LcpProblem::new(
//!     DMatrix::from_row_slice(1, 1, &[-1.0]),
//!     DVector::from_vec(vec![1.0]),
//! ).unwrap();
//! let sols = oracle::enumerate_solutions(&problem, 1e-10).unwrap();
//! assert_eq!(sols.len(), 2);
//! ```

pub mod config;
pub mod error;
pub mod fixed_point;
pub mod gen;
pub mod hybrid;
pub mod io;
pub mod model;
pub mod oracle;
pub mod report;
pub mod smoothing;

pub use config::SolverConfig;
pub use error::LcpError;
pub use model::{x_to_zw, zw_to_x, LcpProblem, ResidualMetrics};
pub use report::{DirectionKind, IterationRecord, SolveReport, Status};
pub use smoothing::SmoothingParam;
