//! Sparse multivariate polynomials in the commuting variables z[i,j].
//!
//! Variables are ordered by the key (row - col, row, col). Monomials are
//! graded: first by total degree, then lexicographically on the sorted list of
//! factor keys with multiplicity. Polynomials print their terms in increasing
//! monomial order, which makes the text form canonical.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_traits::{One, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::scalar::Ring;

/// The variable z[row, col].
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct VarId {
    pub row: usize,
    pub col: usize,
}

impl VarId {
    pub const fn new(row: usize, col: usize) -> Self {
        VarId { row, col }
    }

    /// row - col
    pub fn offset(&self) -> i64 {
        self.row as i64 - self.col as i64
    }

    pub fn key(&self) -> (i64, usize, usize) {
        (self.offset(), self.row, self.col)
    }
}

impl Ord for VarId {
    fn cmp(&self, other: &Self) -> Ordering {
        self.key().cmp(&other.key())
    }
}

impl PartialOrd for VarId {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for VarId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "z[{},{}]", self.row, self.col)
    }
}

impl fmt::Debug for VarId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Serialize for VarId {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// A product of variables with multiplicities, kept sorted by variable key.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Monomial {
    factors: Vec<(VarId, u32)>,
    degree: u32,
}

impl Monomial {
    /// The empty product.
    pub fn one() -> Self {
        Monomial::default()
    }

    pub fn var(v: VarId) -> Self {
        Monomial {
            factors: vec![(v, 1)],
            degree: 1,
        }
    }

    /// Builds the canonical form of an arbitrary list of factors.
    pub fn from_factors<I: IntoIterator<Item = (VarId, u32)>>(factors: I) -> Self {
        let mut map: BTreeMap<VarId, u32> = BTreeMap::new();
        for (v, e) in factors {
            if e > 0 {
                *map.entry(v).or_insert(0) += e;
            }
        }
        let degree = map.values().sum();
        Monomial {
            factors: map.into_iter().collect(),
            degree,
        }
    }

    pub fn factors(&self) -> &[(VarId, u32)] {
        &self.factors
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn is_one(&self) -> bool {
        self.degree == 0
    }

    pub fn exponent(&self, v: VarId) -> u32 {
        self.factors
            .binary_search_by(|(u, _)| u.cmp(&v))
            .map(|idx| self.factors[idx].1)
            .unwrap_or(0)
    }

    /// Sum of row - col over the factors, counted with multiplicity.
    pub fn net_index(&self) -> i64 {
        self.factors
            .iter()
            .map(|(v, e)| v.offset() * i64::from(*e))
            .sum()
    }

    pub fn variables(&self) -> impl Iterator<Item = VarId> + '_ {
        self.factors.iter().map(|(v, _)| *v)
    }

    /// Factors repeated according to their exponents.
    pub fn expanded(&self) -> impl Iterator<Item = VarId> + '_ {
        self.factors
            .iter()
            .flat_map(|&(v, e)| std::iter::repeat_n(v, e as usize))
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut out = Vec::with_capacity(self.factors.len() + other.factors.len());
        let (mut a, mut b) = (
            self.factors.iter().peekable(),
            other.factors.iter().peekable(),
        );
        loop {
            match (a.peek(), b.peek()) {
                (Some(&&(u, e)), Some(&&(v, f))) => match u.cmp(&v) {
                    Ordering::Less => {
                        out.push((u, e));
                        a.next();
                    }
                    Ordering::Greater => {
                        out.push((v, f));
                        b.next();
                    }
                    Ordering::Equal => {
                        out.push((u, e + f));
                        a.next();
                        b.next();
                    }
                },
                (Some(&&x), None) => {
                    out.push(x);
                    a.next();
                }
                (None, Some(&&y)) => {
                    out.push(y);
                    b.next();
                }
                (None, None) => break,
            }
        }
        Monomial {
            factors: out,
            degree: self.degree + other.degree,
        }
    }

    /// Exponent of `v` and the monomial with one factor of `v` removed.
    fn lower(&self, v: VarId) -> Option<(u32, Monomial)> {
        let idx = self.factors.binary_search_by(|(u, _)| u.cmp(&v)).ok()?;
        let e = self.factors[idx].1;
        let mut factors = self.factors.clone();
        if e == 1 {
            factors.remove(idx);
        } else {
            factors[idx].1 -= 1;
        }
        Some((
            e,
            Monomial {
                factors,
                degree: self.degree - 1,
            },
        ))
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree
            .cmp(&other.degree)
            .then_with(|| self.expanded().cmp(other.expanded()))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return f.write_str("1");
        }
        for (k, (v, e)) in self.factors.iter().enumerate() {
            if k > 0 {
                f.write_str("*")?;
            }
            write!(f, "{v}")?;
            if *e > 1 {
                write!(f, "^{e}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// A polynomial: a finite map from monomials to nonzero coefficients.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct Polynomial<C> {
    terms: BTreeMap<Monomial, C>,
}

impl<C: Ring> Polynomial<C> {
    pub fn zero() -> Self {
        Polynomial {
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(c: C) -> Self {
        Polynomial::monomial(Monomial::one(), c)
    }

    pub fn one() -> Self {
        Polynomial::constant(C::one())
    }

    pub fn var(v: VarId) -> Self {
        Polynomial::monomial(Monomial::var(v), C::one())
    }

    pub fn monomial(m: Monomial, c: C) -> Self {
        let mut p = Polynomial::zero();
        p.add_term(m, c);
        p
    }

    pub fn from_terms<I: IntoIterator<Item = (Monomial, C)>>(terms: I) -> Self {
        let mut p = Polynomial::zero();
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    /// Adds `c * m` in place, dropping the term if it cancels.
    pub fn add_term(&mut self, m: Monomial, c: C) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(slot) => {
                slot.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut slot) => {
                let sum = slot.get().clone() + c;
                if sum.is_zero() {
                    slot.remove();
                } else {
                    *slot.get_mut() = sum;
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in increasing monomial order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &C)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> C {
        self.terms.get(m).cloned().unwrap_or_else(C::zero)
    }

    pub fn constant_term(&self) -> C {
        self.coefficient(&Monomial::one())
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Monomial::is_one)
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    pub fn variables(&self) -> BTreeSet<VarId> {
        self.terms.keys().flat_map(|m| m.variables()).collect()
    }

    /// The terms of total degree exactly `d`.
    pub fn homogeneous_part(&self, d: u32) -> Self {
        Polynomial {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree() == d)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn linear_part(&self) -> Self {
        self.homogeneous_part(1)
    }

    pub fn scale(&self, c: &C) -> Self {
        Polynomial::from_terms(
            self.terms
                .iter()
                .map(|(m, a)| (m.clone(), a.clone() * c.clone())),
        )
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut out = Polynomial::one();
        for _ in 0..e {
            out = &out * self;
        }
        out
    }

    /// Formal partial derivative with respect to `v`.
    pub fn diff(&self, v: VarId) -> Self {
        let mut out = Polynomial::zero();
        for (m, c) in &self.terms {
            if let Some((e, rest)) = m.lower(v) {
                out.add_term(rest, times(c, e));
            }
        }
        out
    }

    /// Exact evaluation; every variable occurring in `self` must be assigned.
    pub fn eval<F>(&self, assignment: &BTreeMap<VarId, F>) -> Result<F>
    where
        F: Ring,
        C: Into<F>,
    {
        let mut total = F::zero();
        for (m, c) in &self.terms {
            let mut value: F = c.clone().into();
            for &(v, e) in m.factors() {
                let x = assignment.get(&v).ok_or(Error::MissingVariable(v))?;
                for _ in 0..e {
                    value = value * x.clone();
                }
            }
            total = total + value;
        }
        Ok(total)
    }

    pub fn map_coefficients<D: Ring>(&self, f: impl Fn(&C) -> D) -> Polynomial<D> {
        Polynomial::from_terms(self.terms.iter().map(|(m, c)| (m.clone(), f(c))))
    }
}

/// `c * e` using ring operations only.
fn times<C: Ring>(c: &C, e: u32) -> C {
    let mut acc = C::zero();
    for _ in 0..e {
        acc = acc + c.clone();
    }
    acc
}

impl<C: Ring> From<VarId> for Polynomial<C> {
    fn from(v: VarId) -> Self {
        Polynomial::var(v)
    }
}

impl<'a, C: Ring> Add<&'a Polynomial<C>> for &'a Polynomial<C> {
    type Output = Polynomial<C>;

    fn add(self, rhs: &'a Polynomial<C>) -> Polynomial<C> {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl<'a, C: Ring> Sub<&'a Polynomial<C>> for &'a Polynomial<C> {
    type Output = Polynomial<C>;

    fn sub(self, rhs: &'a Polynomial<C>) -> Polynomial<C> {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }
}

impl<'a, C: Ring> Mul<&'a Polynomial<C>> for &'a Polynomial<C> {
    type Output = Polynomial<C>;

    fn mul(self, rhs: &'a Polynomial<C>) -> Polynomial<C> {
        let mut out = Polynomial::zero();
        for (m, c) in &self.terms {
            for (n, d) in &rhs.terms {
                out.add_term(m.mul(n), c.clone() * d.clone());
            }
        }
        out
    }
}

impl<C: Ring> Neg for &Polynomial<C> {
    type Output = Polynomial<C>;

    fn neg(self) -> Polynomial<C> {
        Polynomial {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), -c.clone()))
                .collect(),
        }
    }
}

impl<C: Ring> Neg for Polynomial<C> {
    type Output = Polynomial<C>;

    fn neg(mut self) -> Polynomial<C> {
        for c in self.terms.values_mut() {
            *c = -c.clone();
        }
        self
    }
}

macro_rules! forward_owned {
    ($tr:ident, $method:ident) => {
        impl<C: Ring> $tr<Polynomial<C>> for Polynomial<C> {
            type Output = Polynomial<C>;
            fn $method(self, rhs: Polynomial<C>) -> Polynomial<C> {
                (&self).$method(&rhs)
            }
        }
        impl<'a, C: Ring> $tr<&'a Polynomial<C>> for Polynomial<C> {
            type Output = Polynomial<C>;
            fn $method(self, rhs: &'a Polynomial<C>) -> Polynomial<C> {
                (&self).$method(rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl<C: Ring> Zero for Polynomial<C> {
    fn zero() -> Self {
        Polynomial::zero()
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl<C: Ring> One for Polynomial<C> {
    fn one() -> Self {
        Polynomial::one()
    }
}

impl<C: Ring> fmt::Display for Polynomial<C> {
    /// Canonical text, e.g. `-z[2,4] + z[3,5] + z[2,3]*z[6,5]`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let coeff = c.to_string();
            let (negative, magnitude) = match coeff.strip_prefix('-') {
                Some(rest) => (true, rest),
                None => (false, coeff.as_str()),
            };
            match (k, negative) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            if m.is_one() {
                f.write_str(magnitude)?;
            } else if magnitude == "1" {
                write!(f, "{m}")?;
            } else {
                write!(f, "{magnitude}*{m}")?;
            }
        }
        Ok(())
    }
}

impl<C: Ring> fmt::Debug for Polynomial<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl<C: Ring> Serialize for Polynomial<C> {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<C: Ring + FromStr> FromStr for Polynomial<C> {
    type Err = Error;

    /// Parses sums, differences, products, powers, parentheses, integer
    /// literals and variables `z[i,j]`.
    fn from_str(s: &str) -> Result<Self> {
        let mut parser = Parser {
            src: s.as_bytes(),
            pos: 0,
        };
        let p = parser.expr()?;
        parser.skip_ws();
        if parser.pos < parser.src.len() {
            return Err(parser.error("unexpected trailing input"));
        }
        Ok(p)
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn error(&self, message: &str) -> Error {
        Error::parse(self.pos + 1, message)
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn expect(&mut self, b: u8) -> Result<()> {
        if self.peek() == Some(b) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.error(&format!("expected '{}'", b as char)))
        }
    }

    fn digits(&mut self) -> Result<&str> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected a number"));
        }
        Ok(std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits"))
    }

    fn index(&mut self) -> Result<usize> {
        let at = self.pos;
        self.digits()?
            .parse()
            .map_err(|_| Error::parse(at + 1, "index too large"))
    }

    fn expr<C: Ring + FromStr>(&mut self) -> Result<Polynomial<C>> {
        let mut acc = match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                -self.term()?
            }
            Some(b'+') => {
                self.pos += 1;
                self.term()?
            }
            _ => self.term()?,
        };
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    acc = acc + self.term()?;
                }
                Some(b'-') => {
                    self.pos += 1;
                    acc = acc - self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term<C: Ring + FromStr>(&mut self) -> Result<Polynomial<C>> {
        let mut acc = self.power()?;
        while self.peek() == Some(b'*') {
            self.pos += 1;
            acc = acc * self.power()?;
        }
        Ok(acc)
    }

    fn power<C: Ring + FromStr>(&mut self) -> Result<Polynomial<C>> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            let at = self.pos;
            let e: u32 = self
                .digits()?
                .parse()
                .map_err(|_| Error::parse(at + 1, "exponent too large"))?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn atom<C: Ring + FromStr>(&mut self) -> Result<Polynomial<C>> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                self.expect(b')')?;
                Ok(inner)
            }
            Some(b'z') => {
                self.pos += 1;
                self.expect(b'[')?;
                let row = self.index()?;
                self.expect(b',')?;
                let col = self.index()?;
                self.expect(b']')?;
                Ok(Polynomial::var(VarId::new(row, col)))
            }
            Some(b'-') => {
                self.pos += 1;
                Ok(-self.power()?)
            }
            Some(b) if b.is_ascii_digit() => {
                let at = self.pos;
                let text = self.digits()?;
                let c = text
                    .parse::<C>()
                    .map_err(|_| Error::parse(at + 1, "invalid coefficient"))?;
                Ok(Polynomial::constant(c))
            }
            Some(_) => Err(self.error("unexpected character")),
            None => Err(self.error("unexpected end of input")),
        }
    }
}
