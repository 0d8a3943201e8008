//! Coefficient rings.
//!
//! Polynomials, matrices and the fraction-free rank routine are written
//! against these traits so the same code runs over `BigInt`, `BigRational`,
//! and the machine integers (`i64`, `i128`, `Ratio<i64>`) used in fast tests.

use std::fmt::{Debug, Display};
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_traits::{One, Zero};

/// A commutative ring with exact equality.
pub trait Ring:
    Clone
    + PartialEq
    + Debug
    + Display
    + Zero
    + One
    + Neg<Output = Self>
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Send
    + Sync
{
}

impl<T> Ring for T where
    T: Clone
        + PartialEq
        + Debug
        + Display
        + Zero
        + One
        + Neg<Output = Self>
        + Add<Output = Self>
        + Sub<Output = Self>
        + Mul<Output = Self>
        + Send
        + Sync
{
}

/// An integral domain whose `/` is exact whenever the quotient exists.
///
/// Fraction-free elimination only ever divides by a previous pivot that is
/// known to divide the dividend, so truncating integer division is exact.
pub trait ExactDomain: Ring + Div<Output = Self> {}

impl<T> ExactDomain for T where T: Ring + Div<Output = T> {}
