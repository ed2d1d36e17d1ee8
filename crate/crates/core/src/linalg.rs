//! Dense exact matrices over [`Scalar`].
//!
//! Determinants use Bareiss fraction-free elimination on an integer copy of
//! the matrix (rows are cleared of denominators first), so no intermediate
//! rational ever needs reducing. Rank, inverse and solves use plain Gaussian
//! elimination over the rationals; both are exact.

use std::fmt;
use std::ops::{Index, IndexMut, Mul};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::scalar::{format_scalar, Scalar};

#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![Scalar::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Scalar::one();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Scalar) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    /// Panics if the rows are ragged.
    pub fn from_rows(rows: Vec<Vec<Scalar>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Matrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&v| crate::scalar::int(v)).collect())
                .collect(),
        )
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Scalar> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<Scalar>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn scale(&self, k: &Scalar) -> Matrix {
        Matrix::from_fn(self.rows, self.cols, |i, j| &self[(i, j)] * k)
    }

    pub fn select(&self, rows: &[usize], cols: &[usize]) -> Matrix {
        Matrix::from_fn(rows.len(), cols.len(), |i, j| self[(rows[i], cols[j])].clone())
    }

    pub fn without_row(&self, r: usize) -> Matrix {
        let keep: Vec<usize> = (0..self.rows).filter(|&i| i != r).collect();
        let cols: Vec<usize> = (0..self.cols).collect();
        self.select(&keep, &cols)
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square() && (0..self.rows).all(|i| (0..i).all(|j| self[(i, j)] == self[(j, i)]))
    }

    pub fn row_sum(&self, i: usize) -> Scalar {
        self.row(i).iter().fold(Scalar::zero(), |acc, v| acc + v)
    }

    pub fn rank(&self) -> usize {
        let mut work = self.to_rows();
        row_echelon(&mut work)
    }

    /// Determinant by Bareiss elimination. Panics on non-square input.
    pub fn det(&self) -> Scalar {
        assert!(self.is_square(), "determinant of non-square matrix");
        if self.rows == 0 {
            return Scalar::one();
        }
        let mut scale = BigInt::one();
        let mut rows = Vec::with_capacity(self.rows);
        for i in 0..self.rows {
            let (ints, l) = clear_denominators(self.row(i));
            scale *= l;
            rows.push(ints);
        }
        Scalar::new(bareiss_det(rows), scale)
    }

    /// Inverse by Gauss-Jordan elimination, or `None` if singular.
    pub fn inverse(&self) -> Option<Matrix> {
        assert!(self.is_square(), "inverse of non-square matrix");
        let n = self.rows;
        let mut aug: Vec<Vec<Scalar>> = (0..n)
            .map(|i| {
                let mut r = self.row(i).to_vec();
                r.extend((0..n).map(|j| if i == j { Scalar::one() } else { Scalar::zero() }));
                r
            })
            .collect();
        for col in 0..n {
            let pivot = (col..n).find(|&r| !aug[r][col].is_zero())?;
            aug.swap(col, pivot);
            let inv = aug[col][col].recip();
            for v in aug[col].iter_mut() {
                *v *= &inv;
            }
            for r in 0..n {
                if r != col && !aug[r][col].is_zero() {
                    let f = aug[r][col].clone();
                    let (src, dst) = pick_two(&mut aug, col, r);
                    for (d, s) in dst.iter_mut().zip(src.iter()) {
                        *d -= &f * s;
                    }
                }
            }
        }
        Some(Matrix::from_rows(aug.into_iter().map(|r| r[n..].to_vec()).collect()))
    }

    /// Solves `self * x = rhs` for square nonsingular `self`.
    pub fn solve(&self, rhs: &[Scalar]) -> Option<Vec<Scalar>> {
        assert!(self.is_square() && rhs.len() == self.rows);
        let n = self.rows;
        let mut aug: Vec<Vec<Scalar>> = (0..n)
            .map(|i| {
                let mut r = self.row(i).to_vec();
                r.push(rhs[i].clone());
                r
            })
            .collect();
        let rank = row_echelon(&mut aug);
        if rank < n || aug[n - 1][n - 1].is_zero() {
            return None;
        }
        back_substitute(&aug, n)
    }

    pub fn to_f64_rows(&self) -> Vec<Vec<f64>> {
        use num_traits::ToPrimitive;
        (0..self.rows)
            .map(|i| self.row(i).iter().map(|v| v.to_f64().unwrap_or(f64::NAN)).collect())
            .collect()
    }
}

fn pick_two<T>(v: &mut [T], a: usize, b: usize) -> (&T, &mut T) {
    assert_ne!(a, b);
    if a < b {
        let (lo, hi) = v.split_at_mut(b);
        (&lo[a], &mut hi[0])
    } else {
        let (lo, hi) = v.split_at_mut(a);
        (&hi[0], &mut lo[b])
    }
}

/// Reduces `rows` in place to row echelon form; returns the rank.
pub(crate) fn row_echelon(rows: &mut [Vec<Scalar>]) -> usize {
    let nrows = rows.len();
    let ncols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..ncols {
        if rank == nrows {
            break;
        }
        let Some(pivot) = (rank..nrows).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, pivot);
        for r in rank + 1..nrows {
            if rows[r][col].is_zero() {
                continue;
            }
            let f = &rows[r][col] / &rows[rank][col];
            let (src, dst) = pick_two(rows, rank, r);
            for (d, s) in dst.iter_mut().zip(src.iter()).skip(col) {
                *d -= &f * s;
            }
        }
        rank += 1;
    }
    rank
}

fn back_substitute(aug: &[Vec<Scalar>], n: usize) -> Option<Vec<Scalar>> {
    let mut x = vec![Scalar::zero(); n];
    for i in (0..n).rev() {
        if aug[i][i].is_zero() {
            return None;
        }
        let mut acc = aug[i][n].clone();
        for j in i + 1..n {
            acc -= &aug[i][j] * &x[j];
        }
        x[i] = acc / &aug[i][i];
    }
    Some(x)
}

/// Multiplies a rational row by the lcm of its denominators.
pub(crate) fn clear_denominators(row: &[Scalar]) -> (Vec<BigInt>, BigInt) {
    let l = row.iter().fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
    let ints = row.iter().map(|v| v.numer() * (&l / v.denom())).collect();
    (ints, l)
}

/// Bareiss fraction-free determinant of a square integer matrix.
pub(crate) fn bareiss_det(mut a: Vec<Vec<BigInt>>) -> BigInt {
    let n = a.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut sign_flip = false;
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                Some(r) => {
                    a.swap(k, r);
                    sign_flip = !sign_flip;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = v / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    let d = a[n - 1][n - 1].clone();
    if sign_flip {
        -d
    } else {
        d
    }
}

impl Index<(usize, usize)> for Matrix {
    type Output = Scalar;
    fn index(&self, (i, j): (usize, usize)) -> &Scalar {
        debug_assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Scalar {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.data[i * self.cols + j]
    }
}

impl Mul for &Matrix {
    type Output = Matrix;
    fn mul(self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.cols, rhs.rows, "dimension mismatch");
        Matrix::from_fn(self.rows, rhs.cols, |i, j| {
            (0..self.cols).fold(Scalar::zero(), |acc, k| {
                if self[(i, k)].is_zero() {
                    acc
                } else {
                    acc + &self[(i, k)] * &rhs[(k, j)]
                }
            })
        })
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let cells: Vec<String> = self.row(i).iter().map(format_scalar).collect();
            writeln!(f, "  [{}]", cells.join(", "))?;
        }
        write!(f, "]")
    }
}
