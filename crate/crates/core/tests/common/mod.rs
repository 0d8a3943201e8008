#![allow(dead_code)]

use std::collections::BTreeMap;

use hessflag_core::combinatorics::{enumerate_flags, enumerate_hess};
use hessflag_core::{HessenbergFunction, Permutation, VarId};
use rand::Rng;

pub fn all_perms(n: usize) -> Vec<Permutation> {
    std::iter::successors(Some(Permutation::identity(n)), Permutation::next_lex).collect()
}

/// Every (h, w) with h satisfying the standing assumption and the flag of w in Hess(N,h).
pub fn flag_pairs(n: usize) -> Vec<(HessenbergFunction, Permutation)> {
    let mut out = Vec::new();
    for h in enumerate_hess(n).unwrap() {
        for w in enumerate_flags(&h).unwrap() {
            out.push((h.clone(), w));
        }
    }
    out
}

/// Random Schubert-cell coordinates: z[p,q] = 0 for p > q, others in -3..=3.
pub fn random_cell_values(cols: &[VarId], rng: &mut impl Rng) -> BTreeMap<VarId, i64> {
    cols.iter()
        .filter(|v| v.row < v.col)
        .map(|&v| (v, rng.random_range(-3..=3)))
        .collect()
}
