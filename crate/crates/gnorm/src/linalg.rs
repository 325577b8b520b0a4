//! Small dense matrices and LU inversion with partial pivoting.
//!
//! Dimensions here are tiny (solver state spaces), so the implementation
//! favours robustness over speed.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::vector::Vector;

/// Singularity threshold factor: a pivot is rejected when its magnitude
/// falls below `1e-12 * max row norm`.
const PIVOT_REL_THRESHOLD: f64 = 1e-12;

/// A square row-major matrix.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Matrix {
    dim: usize,
    data: Vec<f64>,
}

impl Matrix {
    /// Builds a matrix from rows; all rows must share the square dimension.
    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let dim = rows.len();
        if dim == 0 {
            return Err(Error::invalid("matrix", "must have at least one row"));
        }
        let mut data = Vec::with_capacity(dim * dim);
        for row in rows {
            if row.len() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    got: row.len(),
                });
            }
            for &v in row {
                if !v.is_finite() {
                    return Err(Error::NonFiniteCoordinate { index: data.len() });
                }
                data.push(v);
            }
        }
        Ok(Matrix { dim, data })
    }

    pub fn identity(dim: usize) -> Self {
        let mut data = vec![0.0; dim * dim];
        for i in 0..dim {
            data[i * dim + i] = 1.0;
        }
        Matrix { dim, data }
    }

    /// `diag * I` of the given dimension.
    pub fn scaled_identity(dim: usize, diag: f64) -> Self {
        let mut m = Matrix::identity(dim);
        for i in 0..dim {
            m.data[i * dim + i] = diag;
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, row: usize, col: usize) -> f64 {
        self.data[row * self.dim + col]
    }

    pub fn rows(&self) -> Vec<Vec<f64>> {
        (0..self.dim)
            .map(|r| self.data[r * self.dim..(r + 1) * self.dim].to_vec())
            .collect()
    }

    pub fn mul_vec(&self, v: &Vector) -> Result<Vector> {
        if v.dim() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                got: v.dim(),
            });
        }
        let coords = v.coords();
        let out = (0..self.dim)
            .map(|r| {
                (0..self.dim)
                    .map(|c| self.get(r, c) * coords[c])
                    .sum::<f64>()
            })
            .collect();
        Vector::new(out)
    }

    /// Inverse via LU decomposition with partial pivoting.
    pub fn inverse(&self) -> Result<Matrix> {
        let n = self.dim;
        let max_row_norm = (0..n)
            .map(|r| (0..n).map(|c| self.get(r, c).abs()).sum::<f64>())
            .fold(0.0f64, f64::max);
        let threshold = PIVOT_REL_THRESHOLD * max_row_norm;

        let mut lu = self.data.clone();
        let mut perm: Vec<usize> = (0..n).collect();

        for col in 0..n {
            // Partial pivot: largest magnitude in this column at or below
            // the diagonal.
            let mut pivot_row = col;
            let mut pivot_mag = lu[col * n + col].abs();
            for r in (col + 1)..n {
                let mag = lu[r * n + col].abs();
                if mag > pivot_mag {
                    pivot_mag = mag;
                    pivot_row = r;
                }
            }
            if pivot_mag <= threshold || pivot_mag == 0.0 {
                return Err(Error::SingularMatrix {
                    pivot: pivot_mag,
                    threshold,
                });
            }
            if pivot_row != col {
                for c in 0..n {
                    lu.swap(col * n + c, pivot_row * n + c);
                }
                perm.swap(col, pivot_row);
            }
            let pivot = lu[col * n + col];
            for r in (col + 1)..n {
                let factor = lu[r * n + col] / pivot;
                lu[r * n + col] = factor;
                for c in (col + 1)..n {
                    lu[r * n + c] -= factor * lu[col * n + c];
                }
            }
        }

        // Solve A x = e_k per unit vector through the factorization.
        let mut inv = vec![0.0; n * n];
        for k in 0..n {
            let mut x = vec![0.0; n];
            for (i, &p) in perm.iter().enumerate() {
                x[i] = if p == k { 1.0 } else { 0.0 };
            }
            for i in 1..n {
                for j in 0..i {
                    x[i] -= lu[i * n + j] * x[j];
                }
            }
            for i in (0..n).rev() {
                for j in (i + 1)..n {
                    x[i] -= lu[i * n + j] * x[j];
                }
                x[i] /= lu[i * n + i];
            }
            for i in 0..n {
                inv[i * n + k] = x[i];
            }
        }
        Ok(Matrix { dim: n, data: inv })
    }
}
