use thiserror::Error;

use crate::poly::VarId;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected n = {expected}, found n = {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),

    #[error("invalid Hessenberg function: {0}")]
    InvalidHessenberg(String),

    #[error("Hessenberg function {0} violates h(i) >= i+1 for i < n")]
    StandingAssumption(String),

    #[error("n = {n} exceeds the enumeration cap of {max}")]
    EnumerationCap { n: usize, max: usize },

    #[error("permutation flag {w} does not lie in Hess(N, {h})")]
    FlagNotInVariety { w: String, h: String },

    #[error("({i},{j}) is not a cell of the conjugated Hessenberg complement")]
    NotInComplement { i: usize, j: usize },

    #[error("index {index} out of range 1..={n}")]
    IndexOutOfRange { index: usize, n: usize },

    #[error("y-polynomial requires w^-1({i}) >= w^-1({k})")]
    SubsequenceOrder { i: usize, k: usize },

    #[error("no value assigned to {0}")]
    MissingVariable(VarId),

    #[error("{0} must vanish on the Schubert cell but was assigned a nonzero value")]
    CellConstraint(VarId),

    #[error("matrix determinant is not a unit (+1 or -1)")]
    NonUnitDeterminant,

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
}

impl Error {
    pub(crate) fn parse(column: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line: 1,
            column,
            message: message.into(),
        }
    }
}
