//! The `Omega` matrices of a response matrix and of a distance matrix.

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::matrices::{response_violation, DistanceMatrix, ResponseMatrix};
use crate::metrics::{m_of_d, CircularOrder};
use crate::scalar::Scalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OmegaForm {
    /// Built from a response matrix; Plücker coordinates drop the first row.
    Response,
    /// Built from a distance matrix; Plücker coordinates drop the last row.
    Resistance,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OmegaMatrix {
    matrix: Matrix,
    form: OmegaForm,
}

impl OmegaMatrix {
    pub fn new(matrix: Matrix, form: OmegaForm) -> Result<Self> {
        if matrix.rows() < 2 || matrix.cols() != 2 * matrix.rows() {
            return Err(Error::InvalidInput(format!(
                "omega matrix must be n x 2n with n >= 2, got {}x{}",
                matrix.rows(),
                matrix.cols()
            )));
        }
        Ok(OmegaMatrix { matrix, form })
    }

    pub fn n(&self) -> usize {
        self.matrix.rows()
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn form(&self) -> OmegaForm {
        self.form
    }

    /// Row dropped before taking maximal minors.
    pub fn deleted_row(&self) -> usize {
        match self.form {
            OmegaForm::Response => 0,
            OmegaForm::Resistance => self.n() - 1,
        }
    }

    /// The `(n-1) x 2n` matrix whose maximal minors are the Plücker coordinates.
    pub fn reduced(&self) -> Matrix {
        self.matrix.without_row(self.deleted_row())
    }

    pub fn rank(&self) -> usize {
        self.matrix.rank()
    }

    /// Columns scaled by positive factors; used to probe scale invariance.
    pub fn with_scaled_columns(&self, factors: &[Scalar]) -> OmegaMatrix {
        let m = &self.matrix;
        OmegaMatrix {
            matrix: Matrix::from_fn(m.rows(), m.cols(), |i, j| &m[(i, j)] * &factors[j]),
            form: self.form,
        }
    }
}

fn sign(parity: usize) -> Scalar {
    if parity.is_multiple_of(2) {
        Scalar::one()
    } else {
        -Scalar::one()
    }
}

/// Closed form of the response-side Omega for any square matrix: odd
/// columns carry `(-1)^(i+j) x_ij`, even columns the two ones per row.
pub(crate) fn omega_of(x: &Matrix) -> Matrix {
    let n = x.rows();
    Matrix::from_fn(n, 2 * n, |i, c| {
        let j = c / 2;
        if c % 2 == 0 {
            sign(i + j) * &x[(i, j)]
        } else if i == 0 && j == n - 1 {
            sign(n)
        } else if j == i || j + 1 == i {
            Scalar::one()
        } else {
            Scalar::zero()
        }
    })
}

/// Shift operator of order `2n`: ones on the superdiagonal and `(-1)^n`
/// in the bottom-left corner.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ShiftOperator {
    n: usize,
}

impl ShiftOperator {
    pub fn new(n: usize) -> Self {
        ShiftOperator { n }
    }

    pub fn matrix(&self) -> Matrix {
        let size = 2 * self.n;
        Matrix::from_fn(size, size, |r, c| {
            if c == r + 1 {
                Scalar::one()
            } else if r == size - 1 && c == 0 {
                sign(self.n)
            } else {
                Scalar::zero()
            }
        })
    }

    /// `m * s` without forming `s`.
    pub fn apply_right(&self, m: &Matrix) -> Matrix {
        let size = 2 * self.n;
        assert_eq!(m.cols(), size);
        Matrix::from_fn(m.rows(), size, |i, c| {
            if c == 0 {
                sign(self.n) * &m[(i, size - 1)]
            } else {
                m[(i, c - 1)].clone()
            }
        })
    }
}

pub fn build_omega_response(m: &ResponseMatrix) -> Result<OmegaMatrix> {
    if let Some(problem) = response_violation(m.matrix()) {
        return Err(Error::InvalidResponse(problem));
    }
    if m.order() < 2 {
        return Err(Error::InvalidResponse("need at least two boundary nodes".into()));
    }
    if m.matrix().is_zero() {
        return Err(Error::InvalidResponse(
            "zero matrix: kernel exceeds the all-ones vector".into(),
        ));
    }
    OmegaMatrix::new(omega_of(m.matrix()), OmegaForm::Response)
}

/// `Omega(M(D)) * s`, rows indexed by positions of `order`.
pub fn build_omega_resistance(d: &DistanceMatrix, order: &CircularOrder) -> Result<OmegaMatrix> {
    let n = d.order();
    if n < 2 {
        return Err(Error::InvalidInput("need at least two nodes".into()));
    }
    let m = m_of_d(d, order)?;
    let omega = ShiftOperator::new(n).apply_right(&omega_of(m.matrix()));
    OmegaMatrix::new(omega, OmegaForm::Resistance)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::netcore::examples::{four_leaf_tree, single_edge};
    use crate::netcore::response_matrix;
    use crate::scalar::{frac, int};

    fn tree_d() -> DistanceMatrix {
        DistanceMatrix::from_i64(&[&[0, 3, 3, 2], &[3, 0, 2, 3], &[3, 2, 0, 3], &[2, 3, 3, 0]]).unwrap()
    }

    #[test]
    fn response_omega_of_tree() {
        let omega = build_omega_response(&response_matrix(&four_leaf_tree()).unwrap()).unwrap();
        let first: Vec<Scalar> = vec![
            frac(5, 8),
            int(1),
            frac(1, 8),
            int(0),
            frac(-1, 8),
            int(0),
            frac(3, 8),
            int(1),
        ];
        assert_eq!(omega.matrix().row(0), &first[..]);
        assert_eq!(omega.rank(), 3);
        assert_eq!(omega.deleted_row(), 0);
    }

    #[test]
    fn two_node_omega() {
        let c = frac(3, 2);
        let omega = build_omega_response(&response_matrix(&single_edge(c.clone())).unwrap()).unwrap();
        let row = [c.clone(), int(1), c.clone(), int(1)];
        assert_eq!(omega.matrix().row(0), &row[..]);
        assert_eq!(omega.matrix().row(1), &row[..]);
        assert_eq!(omega.rank(), 1);
        let r = build_omega_resistance(
            &DistanceMatrix::from_i64(&[&[0, 5], &[5, 0]]).unwrap(),
            &CircularOrder::identity(2),
        )
        .unwrap();
        assert_eq!(r.rank(), 1);
    }

    #[test]
    fn zero_response_rejected() {
        let zero = ResponseMatrix::new(Matrix::zeros(3, 3)).unwrap();
        assert!(matches!(build_omega_response(&zero), Err(Error::InvalidResponse(_))));
    }

    #[test]
    fn resistance_omega_of_tree() {
        let omega = build_omega_resistance(&tree_d(), &CircularOrder::identity(4)).unwrap();
        let expected = Matrix::from_i64(&[
            &[1, 3, 1, 1, 0, -1, 0, 1],
            &[0, 1, 1, 2, 1, 1, 0, 0],
            &[0, -1, 0, 1, 1, 3, 1, 1],
        ]);
        assert_eq!(&omega.reduced(), &expected);
        assert_eq!(omega.deleted_row(), 3);
        assert_eq!(omega.rank(), 3);
    }

    #[test]
    fn shift_matches_explicit_product() {
        let omega = omega_of(response_matrix(&four_leaf_tree()).unwrap().matrix());
        let s = ShiftOperator::new(4);
        assert_eq!(s.apply_right(&omega), &omega * &s.matrix());
        assert_eq!(s.matrix()[(7, 0)], int(1));
        assert_eq!(ShiftOperator::new(3).matrix()[(5, 0)], int(-1));
    }

    #[test]
    fn scaling_distance_scales_even_columns() {
        let order = CircularOrder::identity(4);
        let base = build_omega_resistance(&tree_d(), &order).unwrap();
        let scaled = build_omega_resistance(&tree_d().scaled(&int(5)), &order).unwrap();
        for i in 0..4 {
            for c in 0..8 {
                let expect = if c % 2 == 1 {
                    &base.matrix()[(i, c)] * int(5)
                } else {
                    base.matrix()[(i, c)].clone()
                };
                assert_eq!(scaled.matrix()[(i, c)], expect);
            }
        }
    }
}
