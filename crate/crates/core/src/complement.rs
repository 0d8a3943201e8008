//! The Hessenberg complement conjugated by a permutation, and lower diagonal
//! full strings inside it.

use std::fmt;

use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};

use crate::combinatorics::{HessenbergFunction, Permutation};
use crate::error::{Error, Result};

/// A subset of the n×n grid, stored as a bitset in row-major order.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CellSet {
    n: usize,
    bits: Vec<u64>,
}

impl CellSet {
    pub fn empty(n: usize) -> Self {
        CellSet {
            n,
            bits: vec![0; (n * n).div_ceil(64)],
        }
    }

    pub fn from_cells<I: IntoIterator<Item = (usize, usize)>>(n: usize, cells: I) -> Result<Self> {
        let mut set = CellSet::empty(n);
        for (i, j) in cells {
            set.insert(i, j)?;
        }
        Ok(set)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    fn slot(&self, i: usize, j: usize) -> Result<usize> {
        for index in [i, j] {
            if index == 0 || index > self.n {
                return Err(Error::IndexOutOfRange { index, n: self.n });
            }
        }
        Ok((i - 1) * self.n + (j - 1))
    }

    pub fn insert(&mut self, i: usize, j: usize) -> Result<()> {
        let s = self.slot(i, j)?;
        self.bits[s / 64] |= 1 << (s % 64);
        Ok(())
    }

    /// Membership; cells outside the grid are never members.
    pub fn contains(&self, i: usize, j: usize) -> bool {
        match self.slot(i, j) {
            Ok(s) => self.bits[s / 64] >> (s % 64) & 1 == 1,
            Err(_) => false,
        }
    }

    pub fn len(&self) -> usize {
        self.bits.iter().map(|b| b.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.iter().all(|&b| b == 0)
    }

    /// Cells in row-major order.
    pub fn iter(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        let n = self.n;
        (1..=n)
            .flat_map(move |i| (1..=n).map(move |j| (i, j)))
            .filter(|&(i, j)| self.contains(i, j))
    }

    /// Cells ordered by (i - j, i): upper-right diagonals first.
    pub fn iter_by_diagonal(&self) -> Vec<(usize, usize)> {
        let mut cells: Vec<_> = self.iter().collect();
        cells.sort_by_key(|&(i, j)| cell_key(i, j));
        cells
    }

    /// Whether the whole string {(d,1), (d+1,2), ..., (n,n-d+1)} lies in the set.
    pub fn contains_string(&self, d: usize) -> bool {
        d >= 2 && d <= self.n && (d..=self.n).all(|i| self.contains(i, i + 1 - d))
    }

    /// ASCII picture: '.' for cells in the set, '#' for the rest, and '*' for
    /// cells of a full string contained in the set.
    pub fn render(&self) -> String {
        let heights = full_string_heights(self);
        let mut out = String::with_capacity(self.n * (self.n + 1));
        for i in 1..=self.n {
            for j in 1..=self.n {
                let on_string = i > j && heights.contains(&(i - j));
                out.push(if on_string {
                    '*'
                } else if self.contains(i, j) {
                    '.'
                } else {
                    '#'
                });
            }
            out.push('\n');
        }
        out
    }
}

/// Ordering key (i - j, i) for grid cells.
pub fn cell_key(i: usize, j: usize) -> (i64, usize) {
    (i as i64 - j as i64, i)
}

impl fmt::Debug for CellSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl Serialize for CellSet {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(self.len()))?;
        for (i, j) in self.iter() {
            seq.serialize_element(&[i, j])?;
        }
        seq.end()
    }
}

/// H^c_w = {(i,j) : w^-1(i) > h(w^-1(j))}.
pub fn complement(w: &Permutation, h: &HessenbergFunction) -> Result<CellSet> {
    if w.n() != h.n() {
        return Err(Error::DimensionMismatch {
            expected: h.n(),
            found: w.n(),
        });
    }
    let n = w.n();
    let mut set = CellSet::empty(n);
    for i in 1..=n {
        for j in 1..=n {
            if w.inv_at(i) > h.at(w.inv_at(j)) {
                set.insert(i, j)?;
            }
        }
    }
    Ok(set)
}

/// Heights d-1 of the lower diagonal full strings contained in `c`, ascending.
pub fn full_string_heights(c: &CellSet) -> Vec<usize> {
    (2..=c.n())
        .filter(|&d| c.contains_string(d))
        .map(|d| d - 1)
        .collect()
}

/// (i,j) ∈ H^c_w exactly when (w^-1(i), w^-1(j)) lies in the unconjugated complement.
pub fn conjugation_consistency(
    w: &Permutation,
    h: &HessenbergFunction,
    i: usize,
    j: usize,
) -> Result<bool> {
    let n = w.n();
    for index in [i, j] {
        if index == 0 || index > n {
            return Err(Error::IndexOutOfRange { index, n });
        }
    }
    let conjugated = complement(w, h)?;
    let standard = complement(&Permutation::identity(n), h)?;
    Ok(conjugated.contains(i, j) == standard.contains(w.inv_at(i), w.inv_at(j)))
}
