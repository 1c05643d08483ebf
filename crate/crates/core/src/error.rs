use thiserror::Error;

use crate::monoid::Monomial;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: {left} variables vs {right}")]
    Dimension { left: usize, right: usize },

    #[error("exponent overflow")]
    Overflow,

    #[error("monomial {0} has negative exponents")]
    Laurent(Monomial),

    #[error("max/min index is undefined for the unit monomial")]
    UnitMonomial,

    #[error("the unit ideal is not supported")]
    UnitIdeal,

    #[error("the zero ideal has no {0}")]
    ZeroIdeal(&'static str),

    #[error("ideal is not stable: generator {generator}, index {index} gives {missing} outside the ideal")]
    NotStable {
        generator: Monomial,
        /// 1-based variable index.
        index: usize,
        missing: Monomial,
    },

    #[error("monomial {0} is not in the ideal")]
    NotInIdeal(Monomial),

    #[error("monomial {monomial} has {count} canonical decompositions")]
    AmbiguousDecomposition { monomial: Monomial, count: usize },

    #[error("symbol {0} is not admissible")]
    NotAdmissible(String),

    #[error("invalid index sequence: {0}")]
    InvalidSigma(String),

    #[error("index sequences share index {0}")]
    SharedIndex(usize),

    #[error("element is not trihomogeneous: {0}")]
    NotHomogeneous(String),

    #[error("configuration error: {0}")]
    Config(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
