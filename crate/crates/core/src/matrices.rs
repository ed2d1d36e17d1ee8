//! Validated matrix newtypes shared by every module.

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::scalar::{format_scalar, Scalar};

/// Dirichlet-to-Neumann map of a network: symmetric, zero row sums,
/// non-positive off-diagonal entries.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResponseMatrix(Matrix);

impl ResponseMatrix {
    pub fn new(m: Matrix) -> Result<Self> {
        if let Some(problem) = response_violation(&m) {
            return Err(Error::InvalidResponse(problem));
        }
        Ok(ResponseMatrix(m))
    }

    pub(crate) fn new_unchecked(m: Matrix) -> Self {
        debug_assert!(response_violation(&m).is_none());
        ResponseMatrix(m)
    }

    pub fn order(&self) -> usize {
        self.0.rows()
    }

    pub fn matrix(&self) -> &Matrix {
        &self.0
    }

    pub fn into_matrix(self) -> Matrix {
        self.0
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.0[(i, j)]
    }

    /// Drops the last row and column.
    pub fn reduced(&self) -> Matrix {
        let keep: Vec<usize> = (0..self.order() - 1).collect();
        self.0.select(&keep, &keep)
    }
}

/// Describes the first violated response-matrix condition, if any.
pub fn response_violation(m: &Matrix) -> Option<String> {
    if !m.is_square() {
        return Some(format!("matrix is {}x{}, not square", m.rows(), m.cols()));
    }
    let n = m.rows();
    for i in 0..n {
        for j in 0..i {
            if m[(i, j)] != m[(j, i)] {
                return Some(format!("not symmetric at ({}, {})", i + 1, j + 1));
            }
        }
    }
    for i in 0..n {
        for j in 0..n {
            if i != j && m[(i, j)].is_positive() {
                return Some(format!(
                    "positive off-diagonal entry {} at ({}, {})",
                    format_scalar(&m[(i, j)]),
                    i + 1,
                    j + 1
                ));
            }
        }
        let s = m.row_sum(i);
        if !s.is_zero() {
            return Some(format!("row {} sums to {}", i + 1, format_scalar(&s)));
        }
    }
    None
}

/// Symmetric, nonnegative, zero-diagonal dissimilarity matrix. Triangle
/// and Kalmanson conditions are checked by operations, not assumed.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DistanceMatrix(Matrix);

impl DistanceMatrix {
    pub fn new(m: Matrix) -> Result<Self> {
        if !m.is_square() {
            return Err(Error::InvalidInput(format!(
                "distance matrix is {}x{}, not square",
                m.rows(),
                m.cols()
            )));
        }
        let n = m.rows();
        for i in 0..n {
            if !m[(i, i)].is_zero() {
                return Err(Error::InvalidInput(format!("nonzero diagonal at {}", i + 1)));
            }
            for j in 0..n {
                if m[(i, j)] != m[(j, i)] {
                    return Err(Error::InvalidInput(format!("not symmetric at ({}, {})", i + 1, j + 1)));
                }
                if m[(i, j)].is_negative() {
                    return Err(Error::InvalidInput(format!(
                        "negative distance at ({}, {})",
                        i + 1,
                        j + 1
                    )));
                }
            }
        }
        Ok(DistanceMatrix(m))
    }

    pub fn from_i64(rows: &[&[i64]]) -> Result<Self> {
        Self::new(Matrix::from_i64(rows))
    }

    pub fn order(&self) -> usize {
        self.0.rows()
    }

    pub fn matrix(&self) -> &Matrix {
        &self.0
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.0[(i, j)]
    }

    /// Relabels nodes: entry `(a, b)` of the result is `self[perm[a]][perm[b]]`.
    pub fn permuted(&self, perm: &[usize]) -> DistanceMatrix {
        DistanceMatrix(self.0.select(perm, perm))
    }

    pub fn scaled(&self, k: &Scalar) -> DistanceMatrix {
        assert!(!k.is_negative());
        DistanceMatrix(self.0.scale(k))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn response_validation_reports_first_problem() {
        let ok = Matrix::from_i64(&[&[1, -1], &[-1, 1]]);
        assert!(ResponseMatrix::new(ok).is_ok());
        let positive = Matrix::from_i64(&[&[-1, 1], &[1, -1]]);
        assert!(matches!(
            ResponseMatrix::new(positive),
            Err(Error::InvalidResponse(msg)) if msg.contains("positive off-diagonal")
        ));
        let unbalanced = Matrix::from_i64(&[&[2, -1], &[-1, 1]]);
        assert!(ResponseMatrix::new(unbalanced).is_err());
    }

    #[test]
    fn distance_validation() {
        assert!(DistanceMatrix::from_i64(&[&[0, 1], &[1, 0]]).is_ok());
        assert!(DistanceMatrix::from_i64(&[&[0, 1], &[2, 0]]).is_err());
        assert!(DistanceMatrix::from_i64(&[&[1, 1], &[1, 0]]).is_err());
        assert!(DistanceMatrix::from_i64(&[&[0, -1], &[-1, 0]]).is_err());
    }
}
