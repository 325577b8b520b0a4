//! Dense coordinate vectors over the reals.
//!
//! A [`Vector`] is an element of the ambient real vector space. For the
//! grid-function instance the coordinates are samples `f(t_i)` at uniform
//! grid nodes `t_i` in `[0, 1]`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A finite, non-empty coordinate vector.
///
/// Construction rejects NaN and infinite entries so that downstream
/// evaluators never see non-finite input.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Vector {
    coords: Vec<f64>,
}

impl Vector {
    /// Builds a vector, validating that it is non-empty and all-finite.
    pub fn new(coords: Vec<f64>) -> Result<Self> {
        if coords.is_empty() {
            return Err(Error::EmptyVector);
        }
        for (index, c) in coords.iter().enumerate() {
            if !c.is_finite() {
                return Err(Error::NonFiniteCoordinate { index });
            }
        }
        Ok(Vector { coords })
    }

    /// The zero vector of the given dimension.
    pub fn zeros(dim: usize) -> Self {
        debug_assert!(dim > 0);
        Vector {
            coords: vec![0.0; dim],
        }
    }

    /// A one-dimensional vector; handy for the scalar instances.
    pub fn scalar(value: f64) -> Result<Self> {
        Vector::new(vec![value])
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[f64] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|&c| c == 0.0)
    }

    /// Largest coordinate magnitude.
    pub fn max_abs(&self) -> f64 {
        self.coords.iter().fold(0.0, |m, &c| m.max(c.abs()))
    }

    pub fn add(&self, other: &Vector) -> Result<Vector> {
        self.check_dim(other)?;
        Ok(self.zip_with(other, |a, b| a + b))
    }

    pub fn sub(&self, other: &Vector) -> Result<Vector> {
        self.check_dim(other)?;
        Ok(self.zip_with(other, |a, b| a - b))
    }

    pub fn scale(&self, alpha: f64) -> Vector {
        Vector {
            coords: self.coords.iter().map(|&c| alpha * c).collect(),
        }
    }

    /// `self + alpha * other`, dimension-checked.
    pub fn add_scaled(&self, alpha: f64, other: &Vector) -> Result<Vector> {
        self.check_dim(other)?;
        Ok(self.zip_with(other, |a, b| a + alpha * b))
    }

    /// The single coordinate of a one-dimensional vector.
    pub(crate) fn as_scalar(&self) -> Result<f64> {
        if self.dim() == 1 {
            Ok(self.coords[0])
        } else {
            Err(Error::DimensionMismatch {
                expected: 1,
                got: self.dim(),
            })
        }
    }

    pub(crate) fn check_dim(&self, other: &Vector) -> Result<()> {
        if self.dim() == other.dim() {
            Ok(())
        } else {
            Err(Error::DimensionMismatch {
                expected: self.dim(),
                got: other.dim(),
            })
        }
    }

    fn zip_with(&self, other: &Vector, f: impl Fn(f64, f64) -> f64) -> Vector {
        Vector {
            coords: self
                .coords
                .iter()
                .zip(&other.coords)
                .map(|(&a, &b)| f(a, b))
                .collect(),
        }
    }
}

impl From<Vector> for Vec<f64> {
    fn from(v: Vector) -> Vec<f64> {
        v.coords
    }
}
