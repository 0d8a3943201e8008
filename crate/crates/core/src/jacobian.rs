//! Jacobian of the chart equations, exact evaluation, and exact rank.

use std::collections::BTreeMap;

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::combinatorics::{HessenbergFunction, Permutation};
use crate::complement::complement;
use crate::error::{Error, Result};
use crate::generators::{generator_set, genuine_variables};
use crate::matrix::{rank_exact, Matrix};
use crate::poly::VarId;
use crate::{Poly, Rational, RationalMatrix};

/// Number of cell points tried by [`generic_rank_probe`].
pub const PROBE_SAMPLES: usize = 32;
/// Coordinates of probe points are drawn from -PROBE_RANGE..=PROBE_RANGE.
pub const PROBE_RANGE: i64 = 3;

/// ∂g[i,j]/∂z[p,q] with rows indexed by complement cells and columns by
/// genuine variables, both in (difference, row) key order.
#[derive(Clone, Debug, PartialEq)]
pub struct JacobianMatrix {
    pub w: Permutation,
    pub rows: Vec<(usize, usize)>,
    pub cols: Vec<VarId>,
    pub entries: Matrix<Poly>,
}

pub fn build_jacobian(w: &Permutation, h: &HessenbergFunction) -> Result<JacobianMatrix> {
    let set = generator_set(w, h)?;
    let cols = genuine_variables(w);
    let rows = set.indices();
    let entries = Matrix::from_fn(rows.len(), cols.len(), |r, c| {
        set.entries[r].1.diff(cols[c])
    });
    Ok(JacobianMatrix {
        w: w.clone(),
        rows,
        cols,
        entries,
    })
}

impl JacobianMatrix {
    /// Row indices grouped by i - j, in increasing order of the difference.
    pub fn blocks(&self) -> Vec<(i64, Vec<usize>)> {
        let mut out: Vec<(i64, Vec<usize>)> = Vec::new();
        for (r, &(i, j)) in self.rows.iter().enumerate() {
            let d = i as i64 - j as i64;
            match out.last_mut() {
                Some((last, members)) if *last == d => members.push(r),
                _ => out.push((d, vec![r])),
            }
        }
        out
    }

    /// Value at the permutation flag itself: every genuine variable is 0.
    pub fn eval_at_flag(&self) -> RationalMatrix {
        self.entries
            .map(|p| Rational::from_integer(p.constant_term()))
    }

    /// Value at a point of the chart. Every genuine variable must be assigned.
    ///
    /// With `cell_mode` the point must lie on the Schubert cell, that is
    /// z[p,q] = 0 whenever p > q.
    pub fn eval_at_point(
        &self,
        assignment: &BTreeMap<VarId, Rational>,
        cell_mode: bool,
    ) -> Result<RationalMatrix> {
        for &v in &self.cols {
            let value = assignment.get(&v).ok_or(Error::MissingVariable(v))?;
            if cell_mode && v.row > v.col && !value.is_zero() {
                return Err(Error::CellConstraint(v));
            }
        }
        let mut out = Matrix::zeros(self.entries.rows(), self.entries.cols());
        for r in 0..self.entries.rows() {
            for c in 0..self.entries.cols() {
                let p = self.entries.get(r, c);
                if !p.is_zero() {
                    out.set(r, c, p.eval(assignment)?);
                }
            }
        }
        Ok(out)
    }

    /// Tab-separated table with `g[i,j]` row labels and `z[p,q]` column labels.
    pub fn to_text(&self) -> String {
        table(&self.rows, &self.cols, |r, c| {
            self.entries.get(r, c).to_string()
        })
    }

    pub fn to_json(&self) -> JacobianDump {
        JacobianDump::new(&self.rows, &self.cols, |r, c| {
            self.entries.get(r, c).to_string()
        })
    }

    /// Same layout as [`JacobianMatrix::to_text`] for an evaluated matrix.
    pub fn evaluated_text(&self, m: &RationalMatrix) -> String {
        table(&self.rows, &self.cols, |r, c| m.get(r, c).to_string())
    }

    pub fn evaluated_json(&self, m: &RationalMatrix) -> JacobianDump {
        JacobianDump::new(&self.rows, &self.cols, |r, c| m.get(r, c).to_string())
    }
}

fn table(rows: &[(usize, usize)], cols: &[VarId], cell: impl Fn(usize, usize) -> String) -> String {
    let mut out = String::new();
    for v in cols {
        out.push('\t');
        out.push_str(&v.to_string());
    }
    out.push('\n');
    for (r, (i, j)) in rows.iter().enumerate() {
        out.push_str(&format!("g[{i},{j}]"));
        for c in 0..cols.len() {
            out.push('\t');
            out.push_str(&cell(r, c));
        }
        out.push('\n');
    }
    out
}

/// JSON layout of a Jacobian dump.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct JacobianDump {
    pub rows: Vec<String>,
    pub cols: Vec<String>,
    pub entries: Vec<Vec<String>>,
}

impl JacobianDump {
    fn new(rows: &[(usize, usize)], cols: &[VarId], cell: impl Fn(usize, usize) -> String) -> Self {
        JacobianDump {
            rows: rows.iter().map(|(i, j)| format!("g[{i},{j}]")).collect(),
            cols: cols.iter().map(ToString::to_string).collect(),
            entries: (0..rows.len())
                .map(|r| (0..cols.len()).map(|c| cell(r, c)).collect())
                .collect(),
        }
    }
}

/// Rank of the Jacobian at the permutation flag.
pub fn rank_at_flag(w: &Permutation, h: &HessenbergFunction) -> Result<usize> {
    Ok(rank_exact(&build_jacobian(w, h)?.eval_at_flag()))
}

/// Whether the flag of `w` is a singular point: the Jacobian there has rank
/// below the number of equations.
pub fn is_singular_by_jacobian(w: &Permutation, h: &HessenbergFunction) -> Result<bool> {
    let j = build_jacobian(w, h)?;
    Ok(rank_exact(&j.eval_at_flag()) < j.rows.len())
}

/// Outcome of sampling the Jacobian rank over the Schubert cell.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ProbeResult {
    /// The number of equations; full rank.
    pub target: usize,
    pub max_rank: usize,
    pub samples: usize,
    /// A point attaining `max_rank`, listing only the nonzero coordinates.
    pub witness: BTreeMap<VarId, i64>,
}

impl ProbeResult {
    pub fn reached_full_rank(&self) -> bool {
        self.max_rank == self.target
    }
}

/// Samples Schubert-cell points (z[p,q] = 0 for p > q, the other genuine
/// coordinates uniform in -3..=3) with a seeded generator, stopping at the
/// first full-rank point or after [`PROBE_SAMPLES`] samples. The result is
/// evidence about generic points of the cell, not a proof.
pub fn generic_rank_probe(
    w: &Permutation,
    h: &HessenbergFunction,
    seed: u64,
) -> Result<ProbeResult> {
    let jac = build_jacobian(w, h)?;
    let target = complement(w, h)?.len();
    let free: Vec<VarId> = jac.cols.iter().copied().filter(|v| v.row < v.col).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut best = ProbeResult {
        target,
        max_rank: 0,
        samples: 0,
        witness: BTreeMap::new(),
    };
    for sample in 0..PROBE_SAMPLES {
        let values: BTreeMap<VarId, i64> = free
            .iter()
            .map(|&v| (v, rng.random_range(-PROBE_RANGE..=PROBE_RANGE)))
            .collect();
        let point = cell_point(&jac.cols, &values);
        let rank = rank_exact(&jac.eval_at_point(&point, true)?);
        best.samples = sample + 1;
        if sample == 0 || rank > best.max_rank {
            best.max_rank = rank;
            best.witness = values.into_iter().filter(|(_, x)| *x != 0).collect();
        }
        if rank == target {
            break;
        }
    }
    Ok(best)
}

/// Completes integer values on some coordinates to a full assignment, with
/// every unlisted genuine variable set to 0.
pub fn cell_point(cols: &[VarId], values: &BTreeMap<VarId, i64>) -> BTreeMap<VarId, Rational> {
    cols.iter()
        .map(|&v| {
            let x = values.get(&v).copied().unwrap_or(0);
            (v, Rational::from_integer(x.into()))
        })
        .collect()
}
