//! G-metrics as first-class evaluators.
//!
//! Every G-norm induces one (the derived metric), but the axiom suite also
//! runs on metrics that are *not* norm-derived: the max-of-pairwise-gaps
//! reference on the real line, and deliberately corrupted evaluators used
//! as negative controls.

use std::fmt;
use std::sync::Arc;

use crate::error::Result;
use crate::space::GNormSpace;
use crate::vector::Vector;

type EvalFn = dyn Fn(&Vector, &Vector, &Vector) -> f64 + Send + Sync;

/// A non-negative function of point triples, checkable against the
/// G-metric axioms G1-G5.
#[derive(Clone)]
pub struct GMetric {
    dim: usize,
    kind: GMetricKind,
}

#[derive(Clone)]
enum GMetricKind {
    Derived(GNormSpace),
    RhoMax,
    Custom(Arc<EvalFn>),
}

impl GMetric {
    /// The G-metric `G(x,y,z) = ||x-y, y-z, z-x||` induced by a G-norm.
    pub fn derived(space: GNormSpace) -> Self {
        GMetric {
            dim: space.dim(),
            kind: GMetricKind::Derived(space),
        }
    }

    /// The reference G-metric on the real line:
    /// `rho(x,y,z) = max(|x-y|, |y-z|, |z-x|)`.
    ///
    /// Not derived from any norm; used as an independent cross-check.
    pub fn rho_oracle() -> Self {
        GMetric {
            dim: 1,
            kind: GMetricKind::RhoMax,
        }
    }

    /// Wraps an arbitrary evaluator; the caller vouches for nothing, which
    /// is the point: corrupted evaluators exercise the failure paths.
    pub fn custom<F>(dim: usize, eval: F) -> Self
    where
        F: Fn(&Vector, &Vector, &Vector) -> f64 + Send + Sync + 'static,
    {
        GMetric {
            dim,
            kind: GMetricKind::Custom(Arc::new(eval)),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn eval(&self, x: &Vector, y: &Vector, z: &Vector) -> Result<f64> {
        match &self.kind {
            GMetricKind::Derived(space) => space.derived_gmetric(x, y, z),
            GMetricKind::RhoMax => {
                let (a, b, c) = (x.as_scalar()?, y.as_scalar()?, z.as_scalar()?);
                Ok((a - b).abs().max((b - c).abs()).max((c - a).abs()))
            }
            GMetricKind::Custom(f) => Ok(f(x, y, z)),
        }
    }
}

impl fmt::Debug for GMetric {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let kind = match self.kind {
            GMetricKind::Derived(_) => "derived",
            GMetricKind::RhoMax => "rho_max",
            GMetricKind::Custom(_) => "custom",
        };
        f.debug_struct("GMetric")
            .field("dim", &self.dim)
            .field("kind", &kind)
            .finish()
    }
}
