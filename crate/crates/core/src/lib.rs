//! Exact singularity and normality decisions for regular nilpotent Hessenberg
//! varieties Hess(N, h) at their permutation flags.
//!
//! Two independent routes are provided and cross-checked in the test suites:
//! the combinatorial full-string criterion on the conjugated Hessenberg
//! complement ([`complement`], [`classify`]) and the exact Jacobian rank of the
//! local defining equations ([`generators`], [`jacobian`]).
//!
//! Arithmetic is exact throughout. Polynomials and matrices are generic over
//! the coefficient ring; the aliases below fix the types used by the
//! decision procedures.

pub mod classify;
pub mod combinatorics;
pub mod complement;
pub mod error;
pub mod generators;
pub mod jacobian;
pub mod matrix;
#[cfg(feature = "oracle")]
pub mod oracle;
pub mod poly;
pub mod scalar;

pub use classify::{
    cell_verdict, codim1_perms, is_normal, is_singular_flag, normality_cross_check,
    peterson_string_check, singular_flags, variety_report, CaseTag, CellVerdict, Codim1Perm,
    FlagRecord, VarietyReport,
};
pub use combinatorics::{
    enumerate_flags, enumerate_hess, flag_in_hess, hess_codim, hess_dim, HessenbergFunction,
    Permutation,
};
pub use complement::{complement, full_string_heights, CellSet};
pub use error::{Error, Result};
pub use generators::{generator_g, generator_set, y_recursive, y_subseq, GeneratorSet};
pub use jacobian::{build_jacobian, is_singular_by_jacobian, JacobianMatrix};
pub use matrix::Matrix;
pub use poly::{Monomial, Polynomial, VarId};
pub use scalar::{ExactDomain, Ring};

/// Arbitrary-precision integer.
pub type Integer = num_bigint::BigInt;
/// Reduced fraction of arbitrary-precision integers.
pub type Rational = num_rational::BigRational;
/// Polynomial with arbitrary-precision integer coefficients.
pub type Poly = Polynomial<Integer>;
/// Dense matrix of exact rationals.
pub type RationalMatrix = Matrix<Rational>;
