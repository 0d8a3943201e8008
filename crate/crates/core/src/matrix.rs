//! Dense matrices over a coefficient ring and exact rank.

use std::fmt;

use num_integer::Integer as IntegerOps;
use num_rational::Ratio;

use crate::error::{Error, Result};
use crate::scalar::{ExactDomain, Ring};

/// Row-major dense matrix.
#[derive(Clone, PartialEq, Eq)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Clone> Matrix<T> {
    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        Matrix { rows, cols, data }
    }

    /// Builds a matrix from equal-length rows. `cols` is needed for the
    /// zero-row case.
    pub fn from_rows(cols: usize, rows: Vec<Vec<T>>) -> Result<Self> {
        let mut data = Vec::with_capacity(rows.len() * cols);
        let nrows = rows.len();
        for row in rows {
            if row.len() != cols {
                return Err(Error::DimensionMismatch {
                    expected: cols,
                    found: row.len(),
                });
            }
            data.extend(row);
        }
        Ok(Matrix {
            rows: nrows,
            cols,
            data,
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    /// Entry at 0-based (r, c).
    pub fn get(&self, r: usize, c: usize) -> &T {
        assert!(
            r < self.rows && c < self.cols,
            "index ({r},{c}) out of bounds"
        );
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, value: T) {
        assert!(
            r < self.rows && c < self.cols,
            "index ({r},{c}) out of bounds"
        );
        self.data[r * self.cols + c] = value;
    }

    pub fn row(&self, r: usize) -> &[T] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<T>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        Matrix::from_fn(self.cols, self.rows, |r, c| self.get(c, r).clone())
    }

    /// Reorders rows and columns: entry (r, c) of the result is entry
    /// (row_order[r], col_order[c]) of `self`.
    pub fn permuted(&self, row_order: &[usize], col_order: &[usize]) -> Self {
        Matrix::from_fn(row_order.len(), col_order.len(), |r, c| {
            self.get(row_order[r], col_order[c]).clone()
        })
    }

    pub fn map<U: Clone>(&self, f: impl Fn(&T) -> U) -> Matrix<U> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }
}

impl<T: Ring> Matrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix::from_fn(rows, cols, |_, _| T::zero())
    }

    pub fn identity(n: usize) -> Self {
        Matrix::from_fn(n, n, |r, c| if r == c { T::one() } else { T::zero() })
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(T::is_zero)
    }

    pub fn mul(&self, other: &Matrix<T>) -> Result<Matrix<T>> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: other.rows,
            });
        }
        Ok(Matrix::from_fn(self.rows, other.cols, |r, c| {
            let mut acc = T::zero();
            for k in 0..self.cols {
                let (a, b) = (self.get(r, k), other.get(k, c));
                if !a.is_zero() && !b.is_zero() {
                    acc = acc + a.clone() * b.clone();
                }
            }
            acc
        }))
    }
}

impl<T: fmt::Display> fmt::Display for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.rows {
            let cells: Vec<String> = self.data[r * self.cols..(r + 1) * self.cols]
                .iter()
                .map(ToString::to_string)
                .collect();
            writeln!(f, "[{}]", cells.join(", "))?;
        }
        Ok(())
    }
}

impl<T: fmt::Display> fmt::Debug for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Matrix {}x{}\n{self}", self.rows, self.cols)
    }
}

/// Rank over the fraction field by fraction-free (Bareiss) elimination.
///
/// The pivot in each column is the first nonzero entry at or below the
/// current row. Every division is exact.
pub fn bareiss_rank<T: ExactDomain>(m: &Matrix<T>) -> usize {
    let (rows, cols) = (m.rows, m.cols);
    let mut a = m.data.clone();
    let mut prev = T::one();
    let mut rank = 0;
    for c in 0..cols {
        if rank == rows {
            break;
        }
        let Some(p) = (rank..rows).find(|&r| !a[r * cols + c].is_zero()) else {
            continue;
        };
        if p != rank {
            for k in 0..cols {
                a.swap(p * cols + k, rank * cols + k);
            }
        }
        let pivot = a[rank * cols + c].clone();
        for r in rank + 1..rows {
            let lead = a[r * cols + c].clone();
            for k in c + 1..cols {
                let v = pivot.clone() * a[r * cols + k].clone()
                    - lead.clone() * a[rank * cols + k].clone();
                a[r * cols + k] = v / prev.clone();
            }
            a[r * cols + c] = T::zero();
        }
        prev = pivot;
        rank += 1;
    }
    rank
}

/// Exact rank of a matrix of fractions: each row is scaled by the lcm of its
/// denominators and the resulting integer matrix goes through [`bareiss_rank`].
pub fn rank_exact<T>(m: &Matrix<Ratio<T>>) -> usize
where
    T: ExactDomain + IntegerOps,
{
    bareiss_rank(&clear_denominators(m))
}

/// Row-wise scaling to an integer matrix with the same row space.
pub fn clear_denominators<T>(m: &Matrix<Ratio<T>>) -> Matrix<T>
where
    T: ExactDomain + IntegerOps,
{
    let mut data = Vec::with_capacity(m.data.len());
    for r in 0..m.rows {
        let row = m.row(r);
        let lcm = row.iter().fold(T::one(), |acc, x| acc.lcm(x.denom()));
        data.extend(
            row.iter()
                .map(|x| x.numer().clone() * (lcm.clone() / x.denom().clone())),
        );
    }
    Matrix {
        rows: m.rows,
        cols: m.cols,
        data,
    }
}
