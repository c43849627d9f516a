//! Exact multivariate polynomial arithmetic over the rationals.

mod linalg;
mod parse;
mod poly;

pub use linalg::{bareiss_rank, QMatrix};
pub use parse::{parse_polynomial, parse_rational};
pub use poly::{vars_from, Monomial, Polynomial, Vars};

/// Arbitrary-precision rational, always in lowest terms with positive denominator.
pub type Rational = num_rational::BigRational;

/// Shorthand for a small rational literal.
pub fn q(num: i64, den: i64) -> Rational {
    Rational::new(num.into(), den.into())
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PolyError {
    #[error("variable lists differ: {left:?} vs {right:?}")]
    VariableMismatch { left: Vec<String>, right: Vec<String> },
    #[error("unknown variable {0}")]
    UnknownVariable(String),
    #[error("point has {got} coordinates, polynomial has {expected} variables")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("parse error at byte {position} in {input:?}: {message}")]
    Parse { input: String, position: usize, message: String },
}
