//! Exact multivariate polynomial kernel.
//!
//! Every scalar the engine touches is a [`Poly`] with [`Rational`] coefficients
//! living on a named [`Chart`]. Polynomials are stored in a canonical sparse
//! form, so structural equality is mathematical equality and `is_zero` is a
//! decision procedure.

mod chart;
mod parse;
mod poly;

use num_bigint::BigInt;
use thiserror::Error;

pub use chart::Chart;
pub use parse::{parse_poly, parse_rational};
pub use poly::{poly_algebra, Monomial, Poly, PolyOp};

/// Arbitrary-precision rational, always stored in lowest terms with a positive denominator.
pub type Rational = num_rational::BigRational;

/// Builds `num/den` as a [`Rational`]. Panics when `den == 0`.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Builds the integer `n` as a [`Rational`].
pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExprError {
    #[error("syntax error at byte {position}: {message}")]
    Syntax { position: usize, message: String },
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("chart mismatch: ({left}) vs ({right})")]
    ChartMismatch { left: String, right: String },
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("duplicate coordinate `{0}`")]
    DuplicateCoordinate(String),
    #[error("a chart needs at least one coordinate")]
    EmptyChart,
    #[error("`{0}` is not a valid coordinate identifier")]
    InvalidIdentifier(String),
    #[error("operation `{op}` expects {expected} operand(s), got {found}")]
    Arity {
        op: &'static str,
        expected: usize,
        found: usize,
    },
}

pub type Result<T, E = ExprError> = std::result::Result<T, E>;
