//! Property-based tests: structural invariants that must hold for arbitrary
//! inputs, checked against independent references (compensated summation,
//! explicit norms, the enumeration oracle).

use lcpkit::hybrid::{blend_direction, secant_from_deltas, SecantPair};
use lcpkit::smoothing::{eval_e_diag, eval_f, eval_f_tilde, smooth_abs, SmoothingParam};
use lcpkit::{fixed_point, gen, oracle, x_to_zw, zw_to_x, DirectionKind, LcpProblem, SolverConfig};
use nalgebra::{DMatrix, DVector};
use proptest::prelude::*;

fn sp(p: f64) -> SmoothingParam {
    SmoothingParam::new(p).unwrap()
}

fn finite_vec(n: usize) -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(-1e6..1e6_f64, n)
}

proptest! {
    /// x -> (z, w) -> x is exact in floating point: z - w = 2x with no
    /// rounding because |t| + t and |t| - t are each exact.
    #[test]
    fn zw_round_trip_is_exact(xs in finite_vec(6)) {
        let x = DVector::from_vec(xs);
        let (z, w) = x_to_zw(&x);
        let back = zw_to_x(&z, &w).unwrap();
        prop_assert_eq!(back.as_slice(), x.as_slice());
    }

    /// The transformed pair is nonnegative and exactly complementary
    /// componentwise: one factor of each product is literally 0.0.
    #[test]
    fn zw_pair_is_complementary(xs in finite_vec(8)) {
        let x = DVector::from_vec(xs);
        let (z, w) = x_to_zw(&x);
        for i in 0..x.len() {
            prop_assert!(z[i] >= 0.0);
            prop_assert!(w[i] >= 0.0);
            prop_assert_eq!(z[i] * w[i], 0.0);
        }
    }

    /// The gap reported by `residuals` agrees with a Kahan compensated-sum
    /// evaluation of z^T (Mz + q).
    #[test]
    fn gap_matches_compensated_sum(
        ms in prop::collection::vec(-10.0..10.0_f64, 16),
        qs in prop::collection::vec(-10.0..10.0_f64, 4),
        zs in prop::collection::vec(0.0..10.0_f64, 4),
    ) {
        let prob = LcpProblem::new(
            DMatrix::from_row_slice(4, 4, &ms),
            DVector::from_vec(qs),
        ).unwrap();
        let z = DVector::from_vec(zs);
        let gap = prob.residuals(&z).unwrap().gap;

        let w = prob.m() * &z + prob.q();
        let (mut sum, mut c) = (0.0_f64, 0.0_f64);
        for i in 0..4 {
            let y = z[i] * w[i] - c;
            let t = sum + y;
            c = (t - sum) - y;
            sum = t;
        }
        let scale = (0..4).map(|i| (z[i] * w[i]).abs()).sum::<f64>().max(1.0);
        prop_assert!((gap - sum).abs() <= 1e-12 * scale);
    }

    /// Sandwich, evenness, and monotone sharpening of the smoothing: for
    /// p1 < p2, |t| <= s_{p2}(t) <= s_{p1}(t) <= |t| + ln(3)/p1.
    #[test]
    fn smoothing_sandwich_even_and_monotone(t in -1e6..1e6_f64) {
        let ln3 = 3.0_f64.ln();
        let ps = [1.0, 10.0, 1e3, 1e6, 1e9, 1e12];
        let mut prev = f64::INFINITY;
        for &p in &ps {
            let s = smooth_abs(sp(p), t);
            prop_assert!(s.is_finite());
            prop_assert!(s >= t.abs());
            prop_assert!(s <= t.abs() + ln3 / p);
            prop_assert_eq!(s, smooth_abs(sp(p), -t));
            prop_assert!(s <= prev);
            prev = s;
        }
    }

    /// The smoothing derivative is odd and bounded by 1 in magnitude.
    #[test]
    fn e_diag_is_odd_and_bounded(xs in finite_vec(5), p in 1.0..1e10_f64) {
        let x = DVector::from_vec(xs);
        let e_pos = eval_e_diag(sp(p), &x);
        let e_neg = eval_e_diag(sp(p), &(-&x));
        for i in 0..x.len() {
            prop_assert_eq!(e_pos[i], -e_neg[i]);
            prop_assert!(e_pos[i].abs() <= 1.0);
        }
    }

    /// Uniform surrogate error: ||F~ - F||_inf <= ||M - I||_inf ln(3)/p.
    #[test]
    fn surrogate_error_is_uniformly_bounded(
        ms in prop::collection::vec(-5.0..5.0_f64, 9),
        qs in prop::collection::vec(-5.0..5.0_f64, 3),
        xs in prop::collection::vec(-100.0..100.0_f64, 3),
        p in 1.0..1e9_f64,
    ) {
        let prob = LcpProblem::new(
            DMatrix::from_row_slice(3, 3, &ms),
            DVector::from_vec(qs),
        ).unwrap();
        let x = DVector::from_vec(xs);
        let f = eval_f(&prob, &x).unwrap();
        let ft = eval_f_tilde(&prob, sp(p), &x).unwrap();
        let m_minus_i = prob.m() - DMatrix::identity(3, 3);
        let inf_norm = (0..3)
            .map(|i| m_minus_i.row(i).iter().map(|v| v.abs()).sum::<f64>())
            .fold(0.0_f64, f64::max);
        let bound = inf_norm * 3.0_f64.ln() / p;
        prop_assert!((ft - f).amax() <= bound * (1.0 + 1e-12) + 1e-12);
    }

    /// The blended direction is scale-free in (u, v) and, except in the
    /// fallback case (which returns d itself), has positive alignment with d.
    #[test]
    fn blend_is_scale_free_and_aligned(
        us in prop::collection::vec(-10.0..10.0_f64, 4),
        vs in prop::collection::vec(-10.0..10.0_f64, 4),
        ds in prop::collection::vec(-10.0..10.0_f64, 4),
        scale in 0.001..1000.0_f64,
    ) {
        let u = DVector::from_vec(us);
        let v = DVector::from_vec(vs);
        let d = DVector::from_vec(ds);
        prop_assume!(d.norm() > 1e-6);

        let (s, kind) = blend_direction(&u, &v, &d);
        if kind != DirectionKind::FallbackDescent {
            prop_assert!(s.dot(&d) > 0.0, "kind {kind:?}");
        } else {
            prop_assert_eq!(s.as_slice(), d.as_slice());
        }

        let (s2, kind2) = blend_direction(&(&u * scale), &(&v * scale), &d);
        prop_assert_eq!(kind, kind2);
        if s.norm() > 1e-12 && s2.norm() > 1e-12 {
            let cos = s.dot(&s2) / (s.norm() * s2.norm());
            prop_assert!(cos > 1.0 - 1e-9, "cos {cos}");
        }
    }

    /// Secant construction never divides by a degenerate denominator: a zero
    /// step or orthogonal differences yield the Degenerate marker, and any
    /// returned pair is finite.
    #[test]
    fn secant_pair_is_finite_or_degenerate(
        dxs in prop::collection::vec(-10.0..10.0_f64, 3),
        dfs in prop::collection::vec(-10.0..10.0_f64, 3),
        fks in prop::collection::vec(-10.0..10.0_f64, 3),
    ) {
        let dx = DVector::from_vec(dxs);
        let df = DVector::from_vec(dfs);
        let fk = DVector::from_vec(fks);
        match secant_from_deltas(&dx, &df, &fk) {
            SecantPair::Degenerate => {}
            SecantPair::Pair { u, v } => {
                prop_assert!(u.iter().all(|t| t.is_finite()));
                prop_assert!(v.iter().all(|t| t.is_finite()));
            }
        }
    }

    /// Every solution reported by the enumeration oracle passes the
    /// residual-metrics check at a slightly relaxed tolerance.
    #[test]
    fn oracle_solutions_satisfy_residuals(seed in 0u64..500) {
        let mut rng = gen::seeded_rng(seed);
        let n = 2 + (seed % 5) as usize;
        let (prob, _) = gen::spd_problem(n, &mut rng);
        let tol = 1e-10;
        let sols = oracle::enumerate_solutions(&prob, tol).unwrap();
        prop_assert!(!sols.is_empty());
        for sol in &sols {
            prop_assert!(prob.residuals(&sol.z).unwrap().is_solution(10.0 * tol));
        }
    }

    /// On SPD instances the fixed-point map is a contraction: the distance to
    /// the oracle root shrinks by at least the certified factor every step.
    #[test]
    fn fixed_point_error_decays_monotonically(seed in 0u64..200) {
        let mut rng = gen::seeded_rng(1000 + seed);
        let n = 2 + (seed % 5) as usize;
        let (prob, x0) = gen::spd_problem(n, &mut rng);

        let sols = oracle::enumerate_solutions(&prob, 1e-10).unwrap();
        prop_assert_eq!(sols.len(), 1);
        let zstar = &sols[0].z;
        let wstar = prob.m() * zstar + prob.q();
        let xstar = zw_to_x(zstar, &wstar).unwrap();

        let fact = fixed_point::factorize(&prob).unwrap();
        let rate = fixed_point::spectral_radius_estimate(&fact, 1e-12, 100_000).unwrap();
        prop_assert!(rate < 1.0);

        let mut x = x0;
        let mut err = (&x - &xstar).norm();
        for _ in 0..50 {
            if err <= 1e-12 {
                break;
            }
            x = fixed_point::step(&fact, &x);
            let next = (&x - &xstar).norm();
            prop_assert!(next <= rate * err * (1.0 + 1e-8) + 1e-15, "err {err} -> {next}, rate {rate}");
            err = next;
        }
    }

    /// Both solvers agree with each other on random SPD instances.
    #[test]
    fn solvers_agree_on_random_spd(seed in 0u64..100) {
        let mut rng = gen::seeded_rng(2000 + seed);
        let n = 2 + (seed % 5) as usize;
        let (prob, x0) = gen::spd_problem(n, &mut rng);
        let config = SolverConfig {
            max_iters: 50_000,
            ..SolverConfig::default()
        };
        let fp = fixed_point::solve(&prob, &x0, &config).unwrap();
        let hy = lcpkit::hybrid::solve(&prob, &x0, &config).unwrap();
        prop_assert!((fp.z() - hy.z()).amax() <= 1e-5);
        prop_assert!(fp.final_residuals.is_solution(1e-5));
        prop_assert!(hy.final_residuals.is_solution(1e-5));
    }
}
