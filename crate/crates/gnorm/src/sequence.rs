//! Convergence and Cauchy diagnostics for finite windows of a sequence.

use crate::error::{Error, Result};
use crate::space::GNormSpace;
use crate::vector::Vector;

/// A contiguous slice of a sequence, `points[i] = x_{start_index + i}`.
#[derive(Debug, Clone)]
pub struct SequenceWindow {
    points: Vec<Vector>,
    start_index: usize,
}

impl SequenceWindow {
    pub fn new(points: Vec<Vector>, start_index: usize) -> Result<Self> {
        let first = points.first().ok_or(Error::WindowTooSmall { need: 1, got: 0 })?;
        let dim = first.dim();
        for p in &points {
            if p.dim() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    got: p.dim(),
                });
            }
        }
        Ok(SequenceWindow {
            points,
            start_index,
        })
    }

    pub fn points(&self) -> &[Vector] {
        &self.points
    }

    pub fn start_index(&self) -> usize {
        self.start_index
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}

/// Strategy for the Cauchy residual.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum CauchyMode {
    /// Exact mode beyond this window size costs too much (O(w^3));
    /// `Auto` switches to the pairwise bound there.
    #[default]
    Auto,
    Exact,
    PairwiseBound,
}

/// Window size up to which `CauchyMode::Auto` stays exact.
pub const CAUCHY_EXACT_LIMIT: usize = 32;

/// Worst single-index convergence residual over the window:
/// `max_n ||x_n - x, x_n - x, x_n - x||`.
pub fn convergence_residual(
    space: &GNormSpace,
    window: &SequenceWindow,
    candidate_limit: &Vector,
) -> Result<f64> {
    space.check_member(candidate_limit)?;
    let mut worst = 0.0f64;
    for p in window.points() {
        let d = p.sub(candidate_limit)?;
        worst = worst.max(space.eval(&d, &d, &d)?);
    }
    Ok(worst)
}

/// Cauchy residual of the window.
///
/// Exact mode maximises `||x_l - x_m, x_m - x_n, x_n - x_l||` over all
/// index triples (with repetition); permutation symmetry of the evaluator
/// lets the scan restrict to `l <= m <= n`. The pairwise-bound mode returns
/// the upper envelope
/// `max_{l,m} ||x_l - x_m, x_m - x_l, 0|| + max_{l,n} ||0, x_l - x_n, x_n - x_l||`,
/// which dominates the exact value by subadditivity.
pub fn cauchy_residual(
    space: &GNormSpace,
    window: &SequenceWindow,
    mode: CauchyMode,
) -> Result<f64> {
    if window.len() < 2 {
        return Err(Error::WindowTooSmall {
            need: 2,
            got: window.len(),
        });
    }
    let mode = match mode {
        CauchyMode::Auto if window.len() <= CAUCHY_EXACT_LIMIT => CauchyMode::Exact,
        CauchyMode::Auto => CauchyMode::PairwiseBound,
        other => other,
    };
    let pts = window.points();
    match mode {
        CauchyMode::Exact => {
            let mut worst = 0.0f64;
            for l in 0..pts.len() {
                for m in l..pts.len() {
                    for n in m..pts.len() {
                        worst = worst.max(space.derived_gmetric(&pts[l], &pts[m], &pts[n])?);
                    }
                }
            }
            Ok(worst)
        }
        CauchyMode::PairwiseBound => {
            let zero = Vector::zeros(space.dim());
            let mut first = 0.0f64;
            let mut second = 0.0f64;
            for l in 0..pts.len() {
                for m in 0..pts.len() {
                    let d = pts[l].sub(&pts[m])?;
                    let neg = d.scale(-1.0);
                    first = first.max(space.eval(&d, &neg, &zero)?);
                    second = second.max(space.eval(&zero, &d, &neg)?);
                }
            }
            Ok(first + second)
        }
        CauchyMode::Auto => unreachable!("resolved above"),
    }
}
