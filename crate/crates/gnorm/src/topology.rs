//! Ball geometry: membership, interior witness radii, scaling, convexity,
//! and sampled closure probes.
//!
//! A ball here carries an anchor point `e` besides its center: membership
//! of `y` in `B_e(x0, r)` is `||x0 - y, y - e, e - x0|| < r` (the closed
//! ball uses `<=`). The membership expression appears in the literature in
//! several argument orders; permutation symmetry makes them equal, and this
//! module canonicalizes on the order above.

use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::sampling;
use crate::space::GNormSpace;
use crate::vector::Vector;

/// Attempt budget per requested sample point in rejection sampling.
const REJECTION_ATTEMPTS_PER_POINT: usize = 1000;

/// An (open or closed) anchored ball.
#[derive(Debug, Clone, PartialEq)]
pub struct Ball {
    pub center: Vector,
    pub anchor: Vector,
    pub radius: f64,
    pub closed: bool,
}

impl Ball {
    pub fn open(center: Vector, anchor: Vector, radius: f64) -> Result<Self> {
        Ball::new(center, anchor, radius, false)
    }

    pub fn closed(center: Vector, anchor: Vector, radius: f64) -> Result<Self> {
        Ball::new(center, anchor, radius, true)
    }

    fn new(center: Vector, anchor: Vector, radius: f64, closed: bool) -> Result<Self> {
        if radius <= 0.0 || !radius.is_finite() {
            return Err(Error::invalid("radius", format!("must be > 0, got {radius}")));
        }
        center.check_dim(&anchor)?;
        Ok(Ball {
            center,
            anchor,
            radius,
            closed,
        })
    }
}

/// The membership value `||x0 - y, y - e, e - x0||`.
pub fn membership_value(space: &GNormSpace, ball: &Ball, y: &Vector) -> Result<f64> {
    space.eval(
        &ball.center.sub(y)?,
        &y.sub(&ball.anchor)?,
        &ball.anchor.sub(&ball.center)?,
    )
}

/// Whether `y` lies in the ball: strict `<` for open balls (no tolerance,
/// so boundary samples cannot flake), `<=` for closed ones.
pub fn ball_contains(space: &GNormSpace, ball: &Ball, y: &Vector) -> Result<bool> {
    let value = membership_value(space, ball, y)?;
    Ok(if ball.closed {
        value <= ball.radius
    } else {
        value < ball.radius
    })
}

/// Interior witness radius at `z`: `r1 = r - ||x0 - z, 0, z - x0||`.
///
/// Every point of `B_e(z, r1)` lies in the original ball; the openness
/// property tests sample exactly that contract.
pub fn witness_radius(space: &GNormSpace, ball: &Ball, z: &Vector) -> Result<f64> {
    if ball.closed {
        return Err(Error::invalid("ball", "witness radius requires an open ball"));
    }
    let value = membership_value(space, ball, z)?;
    if value >= ball.radius {
        return Err(Error::OutsideBall {
            label: "z",
            value,
            radius: ball.radius,
        });
    }
    let d = ball.center.sub(z)?;
    let merged = space.eval(&d, &Vector::zeros(space.dim()), &d.scale(-1.0))?;
    Ok(ball.radius - merged)
}

/// Checks the scaling identity `B_e(0, r) = r * B_{e'}(0, 1)` with
/// `e' = e / r` at a single probe point: membership of `y` on the left must
/// agree with membership of `y / r` on the right.
pub fn scaling_check(space: &GNormSpace, e: &Vector, r: f64, y: &Vector) -> Result<bool> {
    if r <= 0.0 || !r.is_finite() {
        return Err(Error::invalid("r", format!("must be > 0, got {r}")));
    }
    let zero = Vector::zeros(space.dim());
    let big = Ball::open(zero.clone(), e.clone(), r)?;
    let unit = Ball::open(zero, e.scale(1.0 / r), 1.0)?;
    let lhs = ball_contains(space, &big, y)?;
    let rhs = ball_contains(space, &unit, &y.scale(1.0 / r))?;
    Ok(lhs == rhs)
}

/// Absolute-convexity probe on `B_0(0, r)` (membership `||x, -x, 0|| < r`):
/// given members `x`, `y` and coefficients with `|alpha| + |beta| <= 1`,
/// reports whether `alpha*x + beta*y` is still a member.
pub fn convex_combination_probe(
    space: &GNormSpace,
    r: f64,
    x: &Vector,
    y: &Vector,
    alpha: f64,
    beta: f64,
) -> Result<bool> {
    if r <= 0.0 || !r.is_finite() {
        return Err(Error::invalid("r", format!("must be > 0, got {r}")));
    }
    let zero = Vector::zeros(space.dim());
    let centered = |v: &Vector| -> Result<f64> { space.eval(v, &v.scale(-1.0), &zero) };
    let vx = centered(x)?;
    if vx >= r {
        return Err(Error::OutsideBall {
            label: "x",
            value: vx,
            radius: r,
        });
    }
    let vy = centered(y)?;
    if vy >= r {
        return Err(Error::OutsideBall {
            label: "y",
            value: vy,
            radius: r,
        });
    }
    let coeff_sum = alpha.abs() + beta.abs();
    if coeff_sum > 1.0 || coeff_sum.is_nan() {
        return Err(Error::CoefficientBound { sum: coeff_sum });
    }
    let combo = x.scale(alpha).add(&y.scale(beta))?;
    Ok(centered(&combo)? < r)
}

/// Result of [`closure_probe`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum ClosureVerdict {
    /// `y` already satisfies the closed-ball inequality.
    InsideClosedBall,
    /// `y` is separated from the open ball by `B_y(y, epsilon)`.
    Separated(SeparationCertificate),
}

/// Sampled evidence that a neighborhood of the probe point misses the ball.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SeparationCertificate {
    /// `epsilon = ||y - a, a - e, e - y|| - r`.
    pub epsilon: f64,
    /// Points sampled from `B_y(y, epsilon)`.
    pub samples_checked: usize,
    /// How many of them also fell in the open ball (zero in every valid
    /// space).
    pub overlaps: usize,
}

/// Decides which side of the closure of an open ball `y` is on.
///
/// Membership value `<= r` puts `y` in the closed ball. Otherwise the
/// excess over `r` is a separation radius: sampled points of
/// `B_y(y, epsilon)` are checked against the open ball and counted.
pub fn closure_probe(
    space: &GNormSpace,
    ball: &Ball,
    y: &Vector,
    n_samples: usize,
    seed: u64,
) -> Result<ClosureVerdict> {
    if ball.closed {
        return Err(Error::invalid("ball", "closure probe requires an open ball"));
    }
    let value = membership_value(space, ball, y)?;
    if value <= ball.radius {
        return Ok(ClosureVerdict::InsideClosedBall);
    }
    let epsilon = value - ball.radius;
    let neighborhood = Ball::open(y.clone(), y.clone(), epsilon)?;
    let inside = ball_sample(space, &neighborhood, n_samples, seed)?;
    let mut overlaps = 0;
    for u in &inside.points {
        if ball_contains(space, ball, u)? {
            overlaps += 1;
        }
    }
    Ok(ClosureVerdict::Separated(SeparationCertificate {
        epsilon,
        samples_checked: inside.points.len(),
        overlaps,
    }))
}

/// Members of a ball found by rejection sampling.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BallSample {
    pub points: Vec<Vector>,
    pub attempts: usize,
    pub acceptance_rate: f64,
    pub seed: u64,
}

/// Draws up to `n` members by rejection from the axis-aligned box centered
/// at `(x0 + e) / 2` with half-width `r` (the ball is contained in it for
/// the built-in instances). An empty result after the attempt budget means
/// the ball may be empty, which genuinely happens: the sum-space ball is
/// empty whenever `r <= ||e - x0||`.
pub fn ball_sample(
    space: &GNormSpace,
    ball: &Ball,
    n: usize,
    seed: u64,
) -> Result<BallSample> {
    if n == 0 {
        return Err(Error::invalid("n", "must be >= 1"));
    }
    space.check_member(&ball.center)?;
    space.check_member(&ball.anchor)?;
    let box_center = ball.center.add(&ball.anchor)?.scale(0.5);
    let mut rng: ChaCha8Rng = sampling::rng_for(seed);
    let budget = n.saturating_mul(REJECTION_ATTEMPTS_PER_POINT);
    let mut points = Vec::new();
    let mut attempts = 0;
    while points.len() < n && attempts < budget {
        attempts += 1;
        let candidate = sampling::box_vector(&mut rng, &box_center, ball.radius);
        if ball_contains(space, ball, &candidate)? {
            points.push(candidate);
        }
    }
    let acceptance_rate = points.len() as f64 / attempts.max(1) as f64;
    Ok(BallSample {
        points,
        attempts,
        acceptance_rate,
        seed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spaces::make_sum_space;

    fn v2(a: f64, b: f64) -> Vector {
        Vector::new(vec![a, b]).unwrap()
    }

    fn v1(a: f64) -> Vector {
        Vector::scalar(a).unwrap()
    }

    fn elliptic_ball() -> (GNormSpace, Ball) {
        let space = make_sum_space(2, 2.0).unwrap();
        let ball = Ball::open(v2(0.0, 0.0), v2(2.0, 0.0), 5.0).unwrap();
        (space, ball)
    }

    #[test]
    fn membership_examples() {
        let (space, ball) = elliptic_ball();
        assert_eq!(membership_value(&space, &ball, &v2(1.0, 0.0)).unwrap(), 4.0);
        assert!(ball_contains(&space, &ball, &v2(1.0, 0.0)).unwrap());
        assert!(!ball_contains(&space, &ball, &v2(3.0, 0.0)).unwrap());
        let degenerate = Ball::open(v2(1.0, 1.0), v2(1.0, 1.0), 0.5).unwrap();
        assert!(ball_contains(&space, &degenerate, &v2(1.0, 1.0)).unwrap());
    }

    #[test]
    fn elliptic_disc_equivalence() {
        // For the sum-Euclidean space the ball is the elliptic disc
        // ||x0 - y|| + ||y - e|| < r - ||e - x0||.
        let (space, ball) = elliptic_ball();
        let mut rng = sampling::rng_for(7);
        for _ in 0..2000 {
            let y = sampling::box_vector(&mut rng, &v2(1.0, 0.0), 6.0);
            let euclid = |v: &Vector| v.coords().iter().map(|c| c * c).sum::<f64>().sqrt();
            let lhs = euclid(&ball.center.sub(&y).unwrap()) + euclid(&y.sub(&ball.anchor).unwrap());
            let oracle = lhs < ball.radius - euclid(&ball.anchor.sub(&ball.center).unwrap());
            assert_eq!(
                ball_contains(&space, &ball, &y).unwrap(),
                oracle,
                "disagreement at {y:?}"
            );
        }
    }

    #[test]
    fn witness_radius_examples() {
        let (space, ball) = elliptic_ball();
        assert_eq!(witness_radius(&space, &ball, &v2(1.0, 0.0)).unwrap(), 3.0);
        assert_eq!(
            witness_radius(&space, &ball, &ball.center.clone()).unwrap(),
            ball.radius
        );
        let line = make_sum_space(1, 1.0).unwrap();
        let lb = Ball::open(v1(0.0), v1(0.0), 2.0).unwrap();
        assert_eq!(witness_radius(&line, &lb, &v1(0.5)).unwrap(), 1.0);
        assert!(matches!(
            witness_radius(&line, &lb, &v1(5.0)),
            Err(Error::OutsideBall { label: "z", .. })
        ));
    }

    #[test]
    fn scaling_examples() {
        let line = make_sum_space(1, 1.0).unwrap();
        assert!(scaling_check(&line, &v1(1.0), 2.0, &v1(0.0)).unwrap());
        assert!(scaling_check(&line, &v1(1.0), 2.0, &v1(0.5)).unwrap());
        let mut rng = sampling::rng_for(3);
        for _ in 0..200 {
            let y = sampling::normal_vector(&mut rng, 1, 2.0);
            assert!(scaling_check(&line, &v1(1.0), 2.0, &y).unwrap());
        }
    }

    #[test]
    fn convexity_examples_and_errors() {
        let line = make_sum_space(1, 1.0).unwrap();
        // r = 2 means membership iff |x| < 1.
        assert!(convex_combination_probe(&line, 2.0, &v1(0.5), &v1(-0.8), 0.6, -0.4).unwrap());
        assert!(convex_combination_probe(&line, 2.0, &v1(0.5), &v1(-0.8), 1.0, 0.0).unwrap());
        assert!(convex_combination_probe(&line, 2.0, &v1(0.5), &v1(0.5), 0.5, 0.5).unwrap());
        assert!(matches!(
            convex_combination_probe(&line, 2.0, &v1(3.0), &v1(0.0), 0.5, 0.5),
            Err(Error::OutsideBall { label: "x", .. })
        ));
        assert!(matches!(
            convex_combination_probe(&line, 2.0, &v1(0.5), &v1(5.0), 0.5, 0.5),
            Err(Error::OutsideBall { label: "y", .. })
        ));
        assert!(matches!(
            convex_combination_probe(&line, 2.0, &v1(0.5), &v1(0.5), 0.8, 0.4),
            Err(Error::CoefficientBound { .. })
        ));
    }

    #[test]
    fn closure_probe_examples() {
        let line = make_sum_space(1, 1.0).unwrap();
        let ball = Ball::open(v1(0.0), v1(0.0), 2.0).unwrap();
        // Boundary point: membership value exactly r.
        assert_eq!(
            closure_probe(&line, &ball, &v1(1.0), 100, 0).unwrap(),
            ClosureVerdict::InsideClosedBall
        );
        assert_eq!(
            closure_probe(&line, &ball, &v1(0.0), 100, 0).unwrap(),
            ClosureVerdict::InsideClosedBall
        );
        match closure_probe(&line, &ball, &v1(3.0), 500, 0).unwrap() {
            ClosureVerdict::Separated(cert) => {
                assert_eq!(cert.epsilon, 4.0);
                assert!(cert.samples_checked > 0);
                assert_eq!(cert.overlaps, 0);
            }
            other => panic!("expected separation, got {other:?}"),
        }
    }

    #[test]
    fn probes_reject_closed_balls_and_bad_counts() {
        let line = make_sum_space(1, 1.0).unwrap();
        let closed = Ball::closed(v1(0.0), v1(0.0), 2.0).unwrap();
        assert!(witness_radius(&line, &closed, &v1(0.0)).is_err());
        assert!(closure_probe(&line, &closed, &v1(0.0), 10, 0).is_err());
        let open = Ball::open(v1(0.0), v1(0.0), 2.0).unwrap();
        assert!(ball_sample(&line, &open, 0, 0).is_err());
        assert!(Ball::open(v1(0.0), v1(0.0), 0.0).is_err());
        assert!(Ball::open(v1(0.0), v1(0.0), -1.0).is_err());
    }

    #[test]
    fn ball_sampling_and_emptiness() {
        let (space, ball) = elliptic_ball();
        let sample = ball_sample(&space, &ball, 50, 0).unwrap();
        assert_eq!(sample.points.len(), 50);
        assert!(sample.acceptance_rate > 0.0);
        for p in &sample.points {
            assert!(ball_contains(&space, &ball, p).unwrap());
        }

        // r = ||e - x0|| makes the open sum-space ball empty.
        let empty = Ball::open(v2(0.0, 0.0), v2(2.0, 0.0), 2.0).unwrap();
        let sample = ball_sample(&space, &empty, 5, 0).unwrap();
        assert!(sample.points.is_empty());
        assert_eq!(sample.acceptance_rate, 0.0);

        let point = Ball::open(v2(0.0, 0.0), v2(0.0, 0.0), 1.0).unwrap();
        let sample = ball_sample(&space, &point, 5, 0).unwrap();
        assert!(!sample.points.is_empty());
    }
}
