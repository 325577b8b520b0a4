//! G-norm evaluation and the metrics it induces.
//!
//! A G-norm assigns a non-negative value to a *triple* of vectors. The five
//! axioms it must satisfy are joint definiteness (N1), permutation symmetry
//! (N2), joint absolute homogeneity (N3), componentwise subadditivity (N4),
//! and the merge inequality `||x,y,z|| >= ||x+y,0,z||` (N5). From any G-norm
//! two distance-like structures follow:
//!
//! * the derived G-metric `G(x,y,z) = ||x-y, y-z, z-x||`, and
//! * the ordinary metric `d_G(x,y) = G(x,y,y) + G(x,x,y)`.
//!
//! Evaluators here combine per-argument quantities through an
//! order-insensitive sum (sort, then add) or `max`, which makes permutation
//! symmetry hold *bit-exactly*, not just up to rounding.

use crate::error::{Error, Result};
use crate::vector::Vector;

/// Base relative tolerance for all inequality checks.
pub const TOL_BASE: f64 = 1e-9;

/// Tolerance at a given operand scale: `1e-9 * max(1, scale)`.
///
/// Strict inequalities are tested with this as a margin; floating point
/// cannot certify strictness at zero scale.
pub fn tolerance(scale: f64) -> f64 {
    TOL_BASE * scale.max(1.0)
}

/// Exponent of the per-argument p-norm; `Infinity` selects the max norm.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum PExponent {
    Finite(f64),
    Infinity,
}

impl PExponent {
    /// Validates `p >= 1` (Minkowski fails below 1, breaking N4).
    pub fn new(p: f64) -> Result<Self> {
        if p.is_nan() {
            return Err(Error::invalid("p", "must not be NaN"));
        }
        if p == f64::INFINITY {
            Ok(PExponent::Infinity)
        } else if p >= 1.0 {
            Ok(PExponent::Finite(p))
        } else {
            Err(Error::invalid("p", format!("must be >= 1, got {p}")))
        }
    }

    fn norm(&self, v: &Vector) -> f64 {
        let p = match *self {
            PExponent::Infinity => return v.max_abs(),
            PExponent::Finite(p) => p,
        };
        if p == 1.0 {
            v.coords().iter().map(|c| c.abs()).sum()
        } else if p == 2.0 {
            v.coords().iter().map(|c| c * c).sum::<f64>().sqrt()
        } else {
            v.coords()
                .iter()
                .map(|c| c.abs().powf(p))
                .sum::<f64>()
                .powf(1.0 / p)
        }
    }
}

/// Instance tag of a built-in G-norm evaluator.
#[derive(Debug, Clone, PartialEq)]
pub enum SpaceKind {
    /// `||x,y,z|| = ||x||_p + ||y||_p + ||z||_p` on R^dim.
    SumPNorm { p: PExponent },
    /// Grid functions sampled on `dim` uniform nodes over `[0,1]`;
    /// `||f,g,h|| = max_i (|f(t_i)| + |g(t_i)| + |h(t_i)|)`.
    GridMaxSum,
    /// `max(||x||_2, ||y||_2, ||z||_2)`: satisfies N1-N4 but violates N5.
    /// Shipped as a negative control for counterexample search.
    MaxCandidate,
}

/// A concrete G-normed space: an instance tag, a dimension, and the
/// deterministic triple evaluator they select.
#[derive(Debug, Clone, PartialEq)]
pub struct GNormSpace {
    kind: SpaceKind,
    dim: usize,
}

/// Sum of three values that is invariant under argument order: sorts before
/// adding so any permutation produces the same floating-point result.
pub(crate) fn sym_sum3(a: f64, b: f64, c: f64) -> f64 {
    let (mut lo, mut mid, mut hi) = (a, b, c);
    if lo > mid {
        std::mem::swap(&mut lo, &mut mid);
    }
    if mid > hi {
        std::mem::swap(&mut mid, &mut hi);
    }
    if lo > mid {
        std::mem::swap(&mut lo, &mut mid);
    }
    (lo + mid) + hi
}

impl GNormSpace {
    pub(crate) fn from_parts(kind: SpaceKind, dim: usize) -> Result<Self> {
        if dim == 0 {
            return Err(Error::invalid("dim", "must be >= 1"));
        }
        Ok(GNormSpace { kind, dim })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn kind(&self) -> &SpaceKind {
        &self.kind
    }

    /// Grid node count, for the grid instance only.
    pub fn grid_size(&self) -> Option<usize> {
        match self.kind {
            SpaceKind::GridMaxSum => Some(self.dim),
            _ => None,
        }
    }

    pub(crate) fn check_member(&self, v: &Vector) -> Result<()> {
        if v.dim() == self.dim {
            Ok(())
        } else {
            Err(Error::DimensionMismatch {
                expected: self.dim,
                got: v.dim(),
            })
        }
    }

    /// Evaluates the G-norm `||x, y, z||`.
    pub fn eval(&self, x: &Vector, y: &Vector, z: &Vector) -> Result<f64> {
        self.check_member(x)?;
        self.check_member(y)?;
        self.check_member(z)?;
        Ok(match &self.kind {
            SpaceKind::SumPNorm { p } => sym_sum3(p.norm(x), p.norm(y), p.norm(z)),
            SpaceKind::GridMaxSum => {
                let (xs, ys, zs) = (x.coords(), y.coords(), z.coords());
                let mut best = 0.0f64;
                for i in 0..xs.len() {
                    best = best.max(sym_sum3(xs[i].abs(), ys[i].abs(), zs[i].abs()));
                }
                best
            }
            SpaceKind::MaxCandidate => {
                let two = PExponent::Finite(2.0);
                two.norm(x).max(two.norm(y)).max(two.norm(z))
            }
        })
    }

    /// The single-argument norm `||x, 0, 0||`.
    pub fn induced_norm(&self, x: &Vector) -> Result<f64> {
        let zero = Vector::zeros(self.dim);
        self.eval(x, &zero, &zero)
    }

    /// The derived G-metric `G(x,y,z) = ||x-y, y-z, z-x||`.
    pub fn derived_gmetric(&self, x: &Vector, y: &Vector, z: &Vector) -> Result<f64> {
        self.check_member(x)?;
        self.check_member(y)?;
        self.check_member(z)?;
        self.eval(&x.sub(y)?, &y.sub(z)?, &z.sub(x)?)
    }

    /// The ordinary metric `d_G(x,y) = G(x,y,y) + G(x,x,y)`; its topology
    /// matches the G-metric topology.
    pub fn dg_metric(&self, x: &Vector, y: &Vector) -> Result<f64> {
        Ok(self.derived_gmetric(x, y, y)? + self.derived_gmetric(x, x, y)?)
    }

    /// Slack in the reverse inequality:
    /// `||x-u, y-v, z-w|| - | ||x,y,z|| - ||u,v,w|| |`.
    ///
    /// Non-negative (up to tolerance) for every valid G-norm.
    pub fn reverse_gap(
        &self,
        x: &Vector,
        y: &Vector,
        z: &Vector,
        u: &Vector,
        v: &Vector,
        w: &Vector,
    ) -> Result<f64> {
        let diff = self.eval(&x.sub(u)?, &y.sub(v)?, &z.sub(w)?)?;
        let gap = (self.eval(x, y, z)? - self.eval(u, v, w)?).abs();
        Ok(diff - gap)
    }
}
