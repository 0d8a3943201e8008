//! Permutations, Hessenberg functions, permutation-flag membership and
//! enumeration.
//!
//! All indices exposed by this module are 1-based: `w.at(j)` is w(j) and
//! `h.at(i)` is h(i). Internally the one-line word is stored 0-based-indexed
//! with 1-based values.

use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// Largest n accepted by the enumeration entry points.
pub const ENUMERATION_CAP: usize = 10;

/// An element of S_n in one-line notation with its inverse cached.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    word: Vec<usize>,
    inv: Vec<usize>,
}

impl Permutation {
    /// Builds a permutation from its one-line notation w(1), ..., w(n).
    pub fn new(word: Vec<usize>) -> Result<Self> {
        let n = word.len();
        if n == 0 {
            return Err(Error::InvalidPermutation("empty word".into()));
        }
        let mut inv = vec![0usize; n];
        for (pos, &v) in word.iter().enumerate() {
            if v == 0 || v > n {
                return Err(Error::InvalidPermutation(format!(
                    "value {v} outside 1..={n}"
                )));
            }
            if inv[v - 1] != 0 {
                return Err(Error::InvalidPermutation(format!("value {v} repeated")));
            }
            inv[v - 1] = pos + 1;
        }
        Ok(Permutation { word, inv })
    }

    pub fn identity(n: usize) -> Self {
        let word: Vec<usize> = (1..=n).collect();
        Permutation {
            inv: word.clone(),
            word,
        }
    }

    /// The longest element w0 = n, n-1, ..., 1.
    pub fn longest(n: usize) -> Self {
        let word: Vec<usize> = (1..=n).rev().collect();
        Permutation {
            inv: word.clone(),
            word,
        }
    }

    /// The simple transposition s_i swapping i and i+1.
    pub fn simple_transposition(n: usize, i: usize) -> Result<Self> {
        if i == 0 || i >= n {
            return Err(Error::IndexOutOfRange { index: i, n: n - 1 });
        }
        let mut word: Vec<usize> = (1..=n).collect();
        word.swap(i - 1, i);
        Permutation::new(word)
    }

    pub fn n(&self) -> usize {
        self.word.len()
    }

    /// w(j), 1-based.
    #[inline]
    pub fn at(&self, j: usize) -> usize {
        self.word[j - 1]
    }

    /// w^-1(i), 1-based.
    #[inline]
    pub fn inv_at(&self, i: usize) -> usize {
        self.inv[i - 1]
    }

    pub fn word(&self) -> &[usize] {
        &self.word
    }

    pub fn inverse(&self) -> Permutation {
        Permutation {
            word: self.inv.clone(),
            inv: self.word.clone(),
        }
    }

    /// The composite `self ∘ other`, i.e. j ↦ self(other(j)).
    pub fn compose(&self, other: &Permutation) -> Result<Permutation> {
        if self.n() != other.n() {
            return Err(Error::DimensionMismatch {
                expected: self.n(),
                found: other.n(),
            });
        }
        Permutation::new(other.word.iter().map(|&j| self.at(j)).collect())
    }

    pub fn is_identity(&self) -> bool {
        self.word.iter().enumerate().all(|(p, &v)| v == p + 1)
    }

    /// Sign of the permutation, +1 or -1.
    pub fn sign(&self) -> i32 {
        let mut seen = vec![false; self.n()];
        let mut sign = 1;
        for start in 0..self.n() {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut cur = start;
            while !seen[cur] {
                seen[cur] = true;
                cur = self.word[cur] - 1;
                len += 1;
            }
            if len % 2 == 0 {
                sign = -sign;
            }
        }
        sign
    }

    /// Lexicographic successor of the one-line word, if any.
    pub fn next_lex(&self) -> Option<Permutation> {
        let mut word = self.word.clone();
        let n = word.len();
        let i = (0..n.saturating_sub(1))
            .rev()
            .find(|&i| word[i] < word[i + 1])?;
        let j = (i + 1..n).rev().find(|&j| word[j] > word[i])?;
        word.swap(i, j);
        word[i + 1..].reverse();
        Some(Permutation::new(word).expect("successor of a permutation is a permutation"))
    }
}

impl fmt::Display for Permutation {
    /// Digits for n <= 9, comma-separated integers otherwise.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.n() <= 9 {
            for v in &self.word {
                write!(f, "{v}")?;
            }
            Ok(())
        } else {
            write_comma_list(f, &self.word)
        }
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation({self})")
    }
}

impl FromStr for Permutation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let word = if s.contains(',') {
            parse_comma_list(s)?
        } else {
            let mut word = Vec::with_capacity(s.len());
            for (idx, ch) in s.char_indices() {
                match ch.to_digit(10) {
                    Some(d) => word.push(d as usize),
                    None => {
                        return Err(Error::parse(
                            idx + 1,
                            format!("unexpected character {ch:?}"),
                        ))
                    }
                }
            }
            word
        };
        if word.is_empty() {
            return Err(Error::parse(1, "empty permutation"));
        }
        Permutation::new(word)
    }
}

impl Serialize for Permutation {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// A Hessenberg function h: [n] -> [n], weakly increasing with h(i) >= i.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HessenbergFunction {
    values: Vec<usize>,
    standing: bool,
}

impl HessenbergFunction {
    pub fn new(values: Vec<usize>) -> Result<Self> {
        let n = values.len();
        if n == 0 {
            return Err(Error::InvalidHessenberg("empty sequence".into()));
        }
        for (idx, &v) in values.iter().enumerate() {
            let i = idx + 1;
            if v > n {
                return Err(Error::InvalidHessenberg(format!(
                    "h({i}) = {v} exceeds n = {n}"
                )));
            }
            if v < i {
                return Err(Error::InvalidHessenberg(format!(
                    "h({i}) = {v} is below {i}"
                )));
            }
            if idx > 0 && values[idx - 1] > v {
                return Err(Error::InvalidHessenberg(format!(
                    "h({}) = {} > h({i}) = {v}",
                    i - 1,
                    values[idx - 1]
                )));
            }
        }
        let standing = values[..n - 1]
            .iter()
            .enumerate()
            .all(|(idx, &v)| v >= idx + 2);
        Ok(HessenbergFunction { values, standing })
    }

    /// h = (n, ..., n): Hess(N, h) is the whole flag variety.
    pub fn full(n: usize) -> Self {
        HessenbergFunction::new(vec![n; n]).expect("constant n is a Hessenberg function")
    }

    /// The Peterson function h(i) = i+1 for i < n.
    pub fn peterson(n: usize) -> Self {
        let values = (1..=n).map(|i| (i + 1).min(n)).collect();
        HessenbergFunction::new(values).expect("Peterson function is a Hessenberg function")
    }

    pub fn n(&self) -> usize {
        self.values.len()
    }

    /// h(i), 1-based.
    #[inline]
    pub fn at(&self, i: usize) -> usize {
        self.values[i - 1]
    }

    pub fn values(&self) -> &[usize] {
        &self.values
    }

    /// Whether h(i) >= i+1 holds for every i < n.
    pub fn satisfies_standing_assumption(&self) -> bool {
        self.standing
    }

    pub fn require_standing(&self) -> Result<()> {
        if self.standing {
            Ok(())
        } else {
            Err(Error::StandingAssumption(self.to_string()))
        }
    }

    pub fn is_peterson(&self) -> bool {
        *self == HessenbergFunction::peterson(self.n())
    }
}

impl fmt::Display for HessenbergFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_comma_list(f, &self.values)
    }
}

impl fmt::Debug for HessenbergFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "h({self})")
    }
}

impl FromStr for HessenbergFunction {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        HessenbergFunction::new(parse_comma_list(s)?)
    }
}

impl Serialize for HessenbergFunction {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.values.serialize(serializer)
    }
}

fn write_comma_list(f: &mut fmt::Formatter<'_>, values: &[usize]) -> fmt::Result {
    for (k, v) in values.iter().enumerate() {
        if k > 0 {
            f.write_str(",")?;
        }
        write!(f, "{v}")?;
    }
    Ok(())
}

/// Parses "3,3,4,5,5"; errors carry the 1-based column of the bad field.
fn parse_comma_list(s: &str) -> Result<Vec<usize>> {
    let mut out = Vec::new();
    let mut column = 1;
    for field in s.split(',') {
        let trimmed = field.trim();
        let lead = field.len() - field.trim_start().len();
        match trimmed.parse::<usize>() {
            Ok(v) => out.push(v),
            Err(_) => {
                let msg = if trimmed.is_empty() {
                    "empty field".to_string()
                } else {
                    format!("invalid integer {trimmed:?}")
                };
                return Err(Error::parse(column + lead, msg));
            }
        }
        column += field.len() + 1;
    }
    Ok(out)
}

fn check_same_n(w: &Permutation, h: &HessenbergFunction) -> Result<()> {
    if w.n() != h.n() {
        return Err(Error::DimensionMismatch {
            expected: h.n(),
            found: w.n(),
        });
    }
    Ok(())
}

/// Whether the permutation flag of `w` lies in Hess(N, h):
/// w^-1(i) <= h(w^-1(i+1)) for all 1 <= i < n.
pub fn flag_in_hess(w: &Permutation, h: &HessenbergFunction) -> Result<bool> {
    check_same_n(w, h)?;
    Ok((1..w.n()).all(|i| w.inv_at(i) <= h.at(w.inv_at(i + 1))))
}

pub(crate) fn require_flag(w: &Permutation, h: &HessenbergFunction) -> Result<()> {
    if flag_in_hess(w, h)? {
        Ok(())
    } else {
        Err(Error::FlagNotInVariety {
            w: w.to_string(),
            h: h.to_string(),
        })
    }
}

/// dim Hess(N, h) = Σ (h(j) - j).
pub fn hess_dim(h: &HessenbergFunction) -> Result<usize> {
    h.require_standing()?;
    Ok((1..=h.n()).map(|j| h.at(j) - j).sum())
}

/// Codimension in the flag variety: the number of cells (i, j) with i > h(j).
pub fn hess_codim(h: &HessenbergFunction) -> Result<usize> {
    h.require_standing()?;
    Ok((1..=h.n()).map(|j| h.n() - h.at(j)).sum())
}

fn check_cap(n: usize) -> Result<()> {
    if n > ENUMERATION_CAP {
        return Err(Error::EnumerationCap {
            n,
            max: ENUMERATION_CAP,
        });
    }
    Ok(())
}

/// All Hessenberg functions of size n satisfying the standing assumption,
/// in lexicographic order of their value sequences.
pub fn enumerate_hess(n: usize) -> Result<Vec<HessenbergFunction>> {
    enumerate_hess_with(n, false)
}

/// As [`enumerate_hess`]; `relaxed` only requires h(i) >= i.
pub fn enumerate_hess_with(n: usize, relaxed: bool) -> Result<Vec<HessenbergFunction>> {
    check_cap(n)?;
    if n == 0 {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    let mut values = Vec::with_capacity(n);
    extend_hess(n, relaxed, &mut values, &mut out);
    Ok(out)
}

fn extend_hess(
    n: usize,
    relaxed: bool,
    values: &mut Vec<usize>,
    out: &mut Vec<HessenbergFunction>,
) {
    let i = values.len() + 1;
    if i > n {
        out.push(HessenbergFunction::new(values.clone()).expect("constructed within bounds"));
        return;
    }
    let floor = if relaxed || i == n { i } else { i + 1 };
    let lo = floor.max(values.last().copied().unwrap_or(0));
    for v in lo..=n {
        values.push(v);
        extend_hess(n, relaxed, values, out);
        values.pop();
    }
}

/// Lazily yields all w in S_n whose flag lies in Hess(N, h), in lexicographic
/// one-line order.
pub fn flags_iter(h: &HessenbergFunction) -> Result<impl Iterator<Item = Permutation> + '_> {
    h.require_standing()?;
    check_cap(h.n())?;
    let first = Some(Permutation::identity(h.n()));
    let all = std::iter::successors(first, Permutation::next_lex);
    Ok(all.filter(move |w| (1..w.n()).all(|i| w.inv_at(i) <= h.at(w.inv_at(i + 1)))))
}

pub fn enumerate_flags(h: &HessenbergFunction) -> Result<Vec<Permutation>> {
    Ok(flags_iter(h)?.collect())
}
