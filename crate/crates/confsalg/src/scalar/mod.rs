//! Exact scalars: the field Q(i)(α) of Gaussian-rational functions in one
//! formal parameter, its text grammar, and exact linear algebra over it.

mod field;
mod gauss;
mod linalg;
mod parse;
mod poly;

pub use field::Scalar;
pub use gauss::GaussRat;
pub use linalg::{AddOutcome, Matrix, SolveOutcome, Solution, SparseSystem, TPoly};
pub use parse::{parse_gauss, parse_scalar};
pub use poly::Poly;

/// Errors raised by scalar arithmetic and linear algebra.
#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum ScalarError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("denominator vanishes at the evaluation point")]
    PoleAtEvaluation,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("parse error: {0}")]
    Parse(String),
}
