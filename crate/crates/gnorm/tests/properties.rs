//! Property tests for the axioms, the derived metrics, and the probe
//! contracts, over randomized vectors.

use gnorm::{
    cauchy_residual, convex_combination_probe, make_grid_space, make_max_candidate,
    make_rho_oracle, make_sum_space, membership_value, picard_solve, scaling_check, tolerance,
    witness_radius, Ball, CauchyMode, GNormSpace, Mapping, Matrix, SequenceWindow, SolveConfig,
    Vector,
};
use proptest::prelude::*;

fn coord() -> impl Strategy<Value = f64> {
    -100.0..100.0f64
}

fn vec2() -> impl Strategy<Value = Vector> {
    prop::array::uniform2(coord()).prop_map(|c| Vector::new(c.to_vec()).unwrap())
}

fn vec1() -> impl Strategy<Value = Vector> {
    coord().prop_map(|c| Vector::scalar(c).unwrap())
}

fn plane() -> GNormSpace {
    make_sum_space(2, 2.0).unwrap()
}

fn norm_scale(space: &GNormSpace, vs: &[&Vector]) -> f64 {
    vs.iter()
        .map(|v| space.induced_norm(v).unwrap())
        .fold(0.0, f64::max)
}

proptest! {
    #[test]
    fn permutation_symmetry_is_exact(x in vec2(), y in vec2(), z in vec2()) {
        let space = plane();
        let base = space.eval(&x, &y, &z).unwrap();
        for (a, b, c) in [(&y, &z, &x), (&z, &x, &y), (&y, &x, &z), (&x, &z, &y), (&z, &y, &x)] {
            prop_assert_eq!(space.eval(a, b, c).unwrap(), base);
        }
    }

    #[test]
    fn homogeneity_holds(x in vec2(), y in vec2(), z in vec2(), alpha in -50.0..50.0f64) {
        let space = plane();
        let lhs = space.eval(&x.scale(alpha), &y.scale(alpha), &z.scale(alpha)).unwrap();
        let rhs = alpha.abs() * space.eval(&x, &y, &z).unwrap();
        prop_assert!((lhs - rhs).abs() <= 1e-12 * rhs.max(1.0));
    }

    #[test]
    fn homogeneity_holds_on_the_grid_instance(
        f in prop::collection::vec(coord(), 11),
        g in prop::collection::vec(coord(), 11),
        h in prop::collection::vec(coord(), 11),
        alpha in -50.0..50.0f64,
    ) {
        let space = make_grid_space(11).unwrap();
        let (f, g, h) = (
            Vector::new(f).unwrap(),
            Vector::new(g).unwrap(),
            Vector::new(h).unwrap(),
        );
        let lhs = space.eval(&f.scale(alpha), &g.scale(alpha), &h.scale(alpha)).unwrap();
        let rhs = alpha.abs() * space.eval(&f, &g, &h).unwrap();
        prop_assert!((lhs - rhs).abs() <= 1e-12 * rhs.max(1.0));
    }

    #[test]
    fn subadditivity_holds(
        x in vec2(), y in vec2(), z in vec2(),
        xp in vec2(), yp in vec2(), zp in vec2(),
    ) {
        let space = plane();
        let joint = space
            .eval(&x.add(&xp).unwrap(), &y.add(&yp).unwrap(), &z.add(&zp).unwrap())
            .unwrap();
        let split = space.eval(&x, &y, &z).unwrap() + space.eval(&xp, &yp, &zp).unwrap();
        prop_assert!(joint <= split + tolerance(split));
    }

    #[test]
    fn merge_inequality_holds(x in vec2(), y in vec2(), z in vec2()) {
        let space = plane();
        let value = space.eval(&x, &y, &z).unwrap();
        let merged = space
            .eval(&x.add(&y).unwrap(), &Vector::zeros(2), &z)
            .unwrap();
        prop_assert!(merged <= value + tolerance(value));
    }

    #[test]
    fn induced_norm_behaves_like_a_norm(x in vec2(), y in vec2(), alpha in -50.0..50.0f64) {
        let space = plane();
        let nx = space.induced_norm(&x).unwrap();
        let scaled = space.induced_norm(&x.scale(alpha)).unwrap();
        prop_assert!((scaled - alpha.abs() * nx).abs() <= 1e-12 * (alpha.abs() * nx).max(1.0));
        let sum = space.induced_norm(&x.add(&y).unwrap()).unwrap();
        let split = nx + space.induced_norm(&y).unwrap();
        prop_assert!(sum <= split + tolerance(split));
        prop_assert!(nx >= 0.0);
    }

    #[test]
    fn reverse_gap_is_nonnegative(
        x in vec2(), y in vec2(), z in vec2(),
        u in vec2(), v in vec2(), w in vec2(),
    ) {
        let space = plane();
        let gap = space.reverse_gap(&x, &y, &z, &u, &v, &w).unwrap();
        let scale = norm_scale(&space, &[&x, &y, &z, &u, &v, &w]);
        prop_assert!(gap >= -tolerance(scale));
    }

    #[test]
    fn derived_metric_anchor_inequality(
        x in vec2(), y in vec2(), z in vec2(), a in vec2(),
    ) {
        let space = plane();
        let lhs = space.derived_gmetric(&x, &y, &z).unwrap();
        let rhs = space.derived_gmetric(&x, &a, &a).unwrap()
            + space.derived_gmetric(&a, &y, &z).unwrap();
        prop_assert!(lhs <= rhs + tolerance(rhs));
    }

    #[test]
    fn derived_metric_dominates_repeated_form(x in vec2(), y in vec2(), z in vec2()) {
        let space = plane();
        let repeated = space.derived_gmetric(&x, &x, &y).unwrap();
        let full = space.derived_gmetric(&x, &y, &z).unwrap();
        prop_assert!(repeated <= full + tolerance(full));
    }

    #[test]
    fn dg_metric_triangle(x in vec2(), y in vec2(), z in vec2()) {
        let space = plane();
        let dxz = space.dg_metric(&x, &z).unwrap();
        let through = space.dg_metric(&x, &y).unwrap() + space.dg_metric(&y, &z).unwrap();
        prop_assert!(dxz <= through + tolerance(through));
        prop_assert_eq!(
            space.dg_metric(&x, &y).unwrap(),
            space.dg_metric(&y, &x).unwrap()
        );
    }

    #[test]
    fn rho_oracle_anchor_inequality(x in vec1(), y in vec1(), z in vec1(), a in vec1()) {
        let rho = make_rho_oracle();
        let lhs = rho.eval(&x, &y, &z).unwrap();
        let rhs = rho.eval(&x, &a, &a).unwrap() + rho.eval(&a, &y, &z).unwrap();
        prop_assert!(lhs <= rhs + tolerance(rhs));
    }

    #[test]
    fn exact_cauchy_never_exceeds_pairwise_bound(
        raw in prop::collection::vec(coord(), 2..12),
    ) {
        let space = make_sum_space(1, 1.0).unwrap();
        let points: Vec<Vector> = raw.into_iter().map(|c| Vector::scalar(c).unwrap()).collect();
        let window = SequenceWindow::new(points, 0).unwrap();
        let exact = cauchy_residual(&space, &window, CauchyMode::Exact).unwrap();
        let bound = cauchy_residual(&space, &window, CauchyMode::PairwiseBound).unwrap();
        prop_assert!(exact <= bound + tolerance(bound));
    }

    #[test]
    fn scaling_identity_holds(e in vec2(), y in vec2(), r in 0.1..50.0f64) {
        let space = plane();
        prop_assert!(scaling_check(&space, &e, r, &y).unwrap());
    }

    #[test]
    fn ball_zero_centered_is_absolutely_convex(
        xr in -0.99..0.99f64, yr in -0.99..0.99f64,
        a in -1.0..1.0f64, b in -1.0..1.0f64,
        r in 0.5..20.0f64,
    ) {
        // Scale raw draws into guaranteed members of B_0(0, r) and
        // admissible coefficients.
        let space = make_sum_space(1, 1.0).unwrap();
        let x = Vector::scalar(xr * r / 2.0).unwrap();
        let y = Vector::scalar(yr * r / 2.0).unwrap();
        // Deflate slightly so the normalized sum cannot round above 1.
        let total = a.abs() + b.abs();
        let shrink = if total > 1.0 { (1.0 - 1e-9) / total } else { 1.0 };
        let (alpha, beta) = (a * shrink, b * shrink);
        prop_assert!(convex_combination_probe(&space, r, &x, &y, alpha, beta).unwrap());
    }

    #[test]
    fn picard_respects_bounds_on_random_affine_contractions(
        k in 0.0..0.9f64,
        b1 in -10.0..10.0f64,
        b2 in -10.0..10.0f64,
        x0 in prop::array::uniform2(-20.0..20.0f64),
    ) {
        let space = plane();
        let map = Mapping::affine(
            Matrix::scaled_identity(2, k),
            Vector::new(vec![b1, b2]).unwrap(),
        )
        .unwrap()
        .with_contraction_constant(k);
        let cfg = SolveConfig::new(1e-9, 500, Vector::new(x0.to_vec()).unwrap()).unwrap();
        let report = picard_solve(&space, &map, &cfg).unwrap();
        prop_assert!(report.converged);
        prop_assert!(report.bound_respected);
        // Step residuals decay geometrically at rate k.
        let slack = tolerance(report.trace.step_residuals[0]);
        for n in 1..report.trace.step_residuals.len() {
            prop_assert!(
                report.trace.step_residuals[n]
                    <= k * report.trace.step_residuals[n - 1] + slack
            );
        }
        // Analytic fixed point of k*x + b is b / (1 - k).
        for (c, b) in report.fixed_point.coords().iter().zip([b1, b2]) {
            prop_assert!((c - b / (1.0 - k)).abs() <= 1e-6);
        }
    }

    #[test]
    fn witness_ball_stays_inside_the_original(
        center in prop::array::uniform2(-3.0..3.0f64),
        offset in prop::array::uniform2(-0.1..0.1f64),
        r in 1.0..8.0f64,
        seed in 0u64..1000,
    ) {
        // Anchor close to the center keeps the ball non-empty.
        let space = plane();
        let center = Vector::new(center.to_vec()).unwrap();
        let anchor = center.add(&Vector::new(offset.to_vec()).unwrap().scale(r)).unwrap();
        let ball = Ball::open(center, anchor, r).unwrap();
        let from_ball = gnorm::ball_sample(&space, &ball, 1, seed).unwrap();
        prop_assume!(!from_ball.points.is_empty());
        let z = from_ball.points[0].clone();
        prop_assert!(membership_value(&space, &ball, &z).unwrap() < r);

        let r1 = witness_radius(&space, &ball, &z).unwrap();
        prop_assert!(r1 > 0.0);
        let inner = Ball::open(z, ball.anchor.clone(), r1).unwrap();
        let from_inner = gnorm::ball_sample(&space, &inner, 64, seed ^ 0xabcd).unwrap();
        for u in &from_inner.points {
            prop_assert!(gnorm::ball_contains(&space, &ball, u).unwrap());
        }
    }
}

/// Every built-in space that passes the norm suite must produce a derived
/// metric that passes the metric suite.
#[test]
fn norm_suite_implies_derived_metric_suite() {
    let spaces = [
        make_sum_space(1, 1.0).unwrap(),
        make_sum_space(2, 2.0).unwrap(),
        make_sum_space(3, f64::INFINITY).unwrap(),
        make_grid_space(11).unwrap(),
        make_max_candidate(2).unwrap(),
    ];
    for space in &spaces {
        let norm_ok = gnorm::check_gnorm_axioms(space, 1500, 3)
            .unwrap()
            .iter()
            .all(|r| r.passed);
        if norm_ok {
            let metric_reports = gnorm::check_derived_gmetric(space, 1500, 3).unwrap();
            for r in &metric_reports {
                assert!(
                    r.passed,
                    "{:?} failed on a space whose norm axioms all passed",
                    r.axiom_id
                );
            }
        }
    }
}
