//! Local defining equations g[i,j] of Hess(N,h) on the affine chart around a
//! permutation flag, built from subsequences of the one-line notation.
//!
//! Coordinates: z[p,q] is a genuine variable when w^-1(p) > w^-1(q). The
//! conventions z[l,l] = 1 and z[p,q] = 0 for non-genuine pairs are applied
//! while terms are built, so no polynomial ever mentions a non-genuine
//! variable.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use serde::Serialize;

use crate::combinatorics::{require_flag, HessenbergFunction, Permutation};
use crate::complement::complement;
use crate::error::{Error, Result};
use crate::poly::{Monomial, VarId};
use crate::Poly;

/// Whether z[p,q] is a genuine coordinate for `w`.
pub fn is_genuine(w: &Permutation, p: usize, q: usize) -> bool {
    w.inv_at(p) > w.inv_at(q)
}

/// z[p,q] with the chart conventions applied: 1 on the diagonal, 0 when not
/// genuine, and 0 when an index falls outside 1..=n.
pub fn coordinate(w: &Permutation, p: usize, q: usize) -> Poly {
    let n = w.n();
    if p == 0 || q == 0 || p > n || q > n {
        Poly::zero()
    } else if p == q {
        Poly::one()
    } else if is_genuine(w, p, q) {
        Poly::var(VarId::new(p, q))
    } else {
        Poly::zero()
    }
}

/// The genuine variables of the chart, in key order; there are n(n-1)/2 of them.
pub fn genuine_variables(w: &Permutation) -> Vec<VarId> {
    let n = w.n();
    let mut vars: Vec<VarId> = (1..=n)
        .flat_map(|p| (1..=n).map(move |q| VarId::new(p, q)))
        .filter(|v| v.row != v.col && is_genuine(w, v.row, v.col))
        .collect();
    vars.sort();
    vars
}

fn check_values(w: &Permutation, indices: &[usize]) -> Result<()> {
    for &index in indices {
        if index == 0 || index > w.n() {
            return Err(Error::IndexOutOfRange { index, n: w.n() });
        }
    }
    Ok(())
}

fn check_order(w: &Permutation, i: usize, k: usize) -> Result<()> {
    check_values(w, &[i, k])?;
    if w.inv_at(i) < w.inv_at(k) {
        return Err(Error::SubsequenceOrder { i, k });
    }
    Ok(())
}

/// The entry of the inverse coordinate matrix in the row of position w^-1(i)
/// and column k, as an alternating sum over subsequences of the one-line
/// notation running from k to i.
///
/// Each subsequence k = a_d, a_{d-1}, ..., a_1, a_0 = i contributes
/// (-1)^d z[i,a_1] z[a_1,a_2] ... z[a_{d-1},k].
pub fn y_subseq(w: &Permutation, i: usize, k: usize) -> Result<Poly> {
    check_order(w, i, k)?;
    if i == k {
        return Ok(Poly::one());
    }
    let (pk, pi) = (w.inv_at(k), w.inv_at(i));
    let mut terms: BTreeMap<Monomial, BigInt> = BTreeMap::new();
    let mut chain = Vec::with_capacity(pi - pk);
    subsequences(w, pk, pi, k, &mut chain, &mut terms);
    Ok(Poly::from_terms(terms))
}

/// Depth-first walk over positions strictly between `pk` and `pi`; `last`
/// is the value at the end of the chain built so far.
fn subsequences(
    w: &Permutation,
    from: usize,
    pi: usize,
    last: usize,
    chain: &mut Vec<(VarId, u32)>,
    terms: &mut BTreeMap<Monomial, BigInt>,
) {
    let i = w.at(pi);
    chain.push((VarId::new(i, last), 1));
    let sign = if chain.len().is_multiple_of(2) { 1 } else { -1 };
    *terms
        .entry(Monomial::from_factors(chain.iter().copied()))
        .or_default() += sign;
    chain.pop();
    for pos in from + 1..pi {
        let v = w.at(pos);
        chain.push((VarId::new(v, last), 1));
        subsequences(w, pos, pi, v, chain, terms);
        chain.pop();
    }
}

/// Same polynomial as [`y_subseq`], computed by the downward recursion
/// y(i,k) = -z[i,k] - Σ y(i,l) z[l,k] over values l sitting strictly between
/// k and i in the one-line notation.
pub fn y_recursive(w: &Permutation, i: usize, k: usize) -> Result<Poly> {
    check_order(w, i, k)?;
    let (pk, pi) = (w.inv_at(k), w.inv_at(i));
    // memo[pos] holds y(i, w(pos)) for pos in pk..=pi.
    let mut memo: Vec<Option<Poly>> = vec![None; pi + 1];
    memo[pi] = Some(Poly::one());
    for pos in (pk..pi).rev() {
        let kk = w.at(pos);
        let mut acc = -Poly::var(VarId::new(i, kk));
        for (mid, y) in memo.iter().enumerate().take(pi).skip(pos + 1) {
            let l = w.at(mid);
            let y = y.as_ref().expect("filled in descending order");
            acc = acc - y * &Poly::var(VarId::new(l, kk));
        }
        memo[pos] = Some(acc);
    }
    Ok(memo[pk].take().expect("pk <= pi"))
}

/// g[i,j] = Σ_l y(i, l-1) z[l,j], summed over l in 2..=n with
/// w^-1(l-1) <= w^-1(i) and z[l,j] nonzero under the chart conventions.
///
/// Defined for every pair (i,j); only complement cells are equations.
pub fn generator_g(w: &Permutation, i: usize, j: usize) -> Result<Poly> {
    check_values(w, &[i, j])?;
    let n = w.n();
    let mut g = Poly::zero();
    for l in 2..=n {
        if w.inv_at(l - 1) > w.inv_at(i) {
            continue;
        }
        let z = coordinate(w, l, j);
        if z.is_zero() {
            continue;
        }
        g = g + &y_subseq(w, i, l - 1)? * &z;
    }
    Ok(g)
}

fn require_cell(w: &Permutation, h: &HessenbergFunction, i: usize, j: usize) -> Result<()> {
    check_values(w, &[i, j])?;
    if !complement(w, h)?.contains(i, j) {
        return Err(Error::NotInComplement { i, j });
    }
    Ok(())
}

/// -z[i,j-1] + z[i+1,j], with out-of-range indices and non-genuine pairs
/// contributing 0. This is the linear part of g[i,j] on complement cells.
pub fn expected_linear_terms(
    w: &Permutation,
    h: &HessenbergFunction,
    i: usize,
    j: usize,
) -> Result<Poly> {
    require_flag(w, h)?;
    require_cell(w, h, i, j)?;
    Ok(&coordinate(w, i + 1, j) - &coordinate(w, i, j - 1))
}

/// The equations g[i,j] for (i,j) in the conjugated complement, ordered by
/// (i - j, i).
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GeneratorSet {
    pub w: Permutation,
    pub h: HessenbergFunction,
    pub entries: Vec<((usize, usize), Poly)>,
}

impl GeneratorSet {
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, i: usize, j: usize) -> Option<&Poly> {
        self.entries
            .iter()
            .find(|((a, b), _)| (*a, *b) == (i, j))
            .map(|(_, g)| g)
    }

    pub fn indices(&self) -> Vec<(usize, usize)> {
        self.entries.iter().map(|(ij, _)| *ij).collect()
    }

    /// One line per generator: `g[i,j] = <polynomial>`.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for ((i, j), g) in &self.entries {
            out.push_str(&format!("g[{i},{j}] = {g}\n"));
        }
        out
    }
}

/// All equations of Hess(N,h) near the flag of `w`.
pub fn generator_set(w: &Permutation, h: &HessenbergFunction) -> Result<GeneratorSet> {
    require_flag(w, h)?;
    let cells = complement(w, h)?.iter_by_diagonal();
    let mut entries = Vec::with_capacity(cells.len());
    for (i, j) in cells {
        debug_assert!(
            i == w.n() || w.inv_at(j) < w.inv_at(i + 1),
            "complement cell ({i},{j}) violates w^-1(j) < w^-1(i+1)"
        );
        entries.push(((i, j), generator_g(w, i, j)?));
    }
    Ok(GeneratorSet {
        w: w.clone(),
        h: h.clone(),
        entries,
    })
}
