//! Brute-force construction of the chart equations by explicit conjugation
//! M^-1 N M of the symbolic coordinate matrix. Exponential in n; used only
//! to certify [`crate::generators`].

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::One;

use crate::combinatorics::{require_flag, HessenbergFunction, Permutation};
use crate::complement::complement;
use crate::error::{Error, Result};
use crate::generators::GeneratorSet;
use crate::matrix::Matrix;
use crate::poly::VarId;
use crate::Poly;

/// An n×n matrix of polynomials.
pub type SymbolicMatrix = Matrix<Poly>;

/// The coordinate matrix M(w) of the chart around the flag of `w`.
///
/// Entry (r, c) is 1 when w(c) = r, 0 when w^-1(r) < c, and otherwise the
/// variable z[r, w(c)].
pub fn build_m(w: &Permutation) -> SymbolicMatrix {
    Matrix::from_fn(w.n(), w.n(), |r0, c0| {
        let (r, c) = (r0 + 1, c0 + 1);
        if w.at(c) == r {
            Poly::one()
        } else if w.inv_at(r) < c {
            Poly::zero()
        } else {
            Poly::var(VarId::new(r, w.at(c)))
        }
    })
}

/// The superdiagonal shift N: ones at (a, a+1).
pub fn shift_matrix(n: usize) -> SymbolicMatrix {
    Matrix::from_fn(n, n, |r, c| {
        if c == r + 1 {
            Poly::one()
        } else {
            Poly::zero()
        }
    })
}

/// Determinants of square submatrices, keyed on (row mask, column mask) and
/// computed by Laplace expansion along the lowest selected row.
struct Minors<'a> {
    m: &'a SymbolicMatrix,
    memo: HashMap<(u32, u32), Poly>,
}

impl Minors<'_> {
    fn det(&mut self, rows: u32, cols: u32) -> Poly {
        if rows == 0 {
            return Poly::one();
        }
        if let Some(d) = self.memo.get(&(rows, cols)) {
            return d.clone();
        }
        let r = rows.trailing_zeros() as usize;
        let rest = rows & !(1 << r);
        let mut total = Poly::zero();
        let mut sign_odd = false;
        for c in 0..self.m.cols() {
            if cols & (1 << c) == 0 {
                continue;
            }
            let entry = self.m.get(r, c);
            if !entry.is_zero() {
                let sub = self.det(rest, cols & !(1 << c));
                let term = entry * &sub;
                total = if sign_odd { total - term } else { total + term };
            }
            sign_odd = !sign_odd;
        }
        self.memo.insert((rows, cols), total.clone());
        total
    }
}

/// Determinant by cofactor expansion.
pub fn determinant(m: &SymbolicMatrix) -> Result<Poly> {
    square_mask(m).map(|full| {
        Minors {
            m,
            memo: HashMap::new(),
        }
        .det(full, full)
    })
}

fn square_mask(m: &SymbolicMatrix) -> Result<u32> {
    if m.rows() != m.cols() {
        return Err(Error::DimensionMismatch {
            expected: m.rows(),
            found: m.cols(),
        });
    }
    if m.rows() >= 32 {
        return Err(Error::IndexOutOfRange {
            index: m.rows(),
            n: 31,
        });
    }
    Ok((1u32 << m.rows()) - 1)
}

/// Exact inverse of a polynomial matrix with determinant ±1, via the
/// adjugate: (M^-1)[i][j] = det · (-1)^(i+j) · minor(j, i).
pub fn adjugate_inverse(m: &SymbolicMatrix) -> Result<SymbolicMatrix> {
    let full = square_mask(m)?;
    let mut minors = Minors {
        m,
        memo: HashMap::new(),
    };
    let det = minors.det(full, full);
    let unit = det.is_constant() && {
        let c = det.constant_term();
        c == BigInt::one() || c == -BigInt::one()
    };
    if !unit {
        return Err(Error::NonUnitDeterminant);
    }
    let n = m.rows();
    let mut inv = Matrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            let minor = minors.det(full & !(1 << j), full & !(1 << i));
            let mut entry = &minor * &det;
            if (i + j) % 2 == 1 {
                entry = -entry;
            }
            inv.set(i, j, entry);
        }
    }
    Ok(inv)
}

/// g[i,j] = (M^-1 N M)[w^-1(i), w^-1(j)] for every cell of the conjugated
/// complement, in the same order as [`crate::generators::generator_set`].
pub fn conjugated_generators(w: &Permutation, h: &HessenbergFunction) -> Result<GeneratorSet> {
    require_flag(w, h)?;
    let cells = complement(w, h)?.iter_by_diagonal();
    let m = build_m(w);
    let inv = if cells.is_empty() {
        Matrix::zeros(0, 0)
    } else {
        adjugate_inverse(&m)?
    };
    let n = w.n();
    let entries = cells
        .into_iter()
        .map(|(i, j)| {
            let (a, b) = (w.inv_at(i) - 1, w.inv_at(j) - 1);
            // (M^-1 N M)[a][b] = Σ_c M^-1[a][c] · M[c+1][b]
            let mut f = Poly::zero();
            for c in 0..n - 1 {
                let (x, y) = (inv.get(a, c), m.get(c + 1, b));
                if !x.is_zero() && !y.is_zero() {
                    f = f + x * y;
                }
            }
            ((i, j), f)
        })
        .collect();
    Ok(GeneratorSet {
        w: w.clone(),
        h: h.clone(),
        entries,
    })
}
