//! Multivariate polynomials over the rationals, degrevlex Gröbner bases, rational
//! functions and the shared expression syntax.

pub mod groebner;
pub mod monomial;
pub mod parse;
pub mod polynomial;
pub mod rational_function;

pub use groebner::{groebner_basis, groebner_basis_with_budget, normal_form};
pub use monomial::Monomial;
pub use parse::{parse_polynomial, parse_rational_function};
pub use polynomial::Polynomial;
pub use rational_function::{substitute_rational, RationalFunction};

use thiserror::Error;

#[derive(Debug, Clone, Error, PartialEq)]
pub enum PolyError {
    #[error("parse error at offset {position}: {message}")]
    Parse { message: String, position: usize },
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("`{0}` is not a polynomial")]
    NotPolynomial(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("Gröbner computation exceeded its budget: {pending} pending pairs (limit {budget})")]
    ResourceBudgetExceeded { pending: usize, budget: usize },
}

impl PolyError {
    pub(crate) fn parse(message: String, position: usize) -> Self {
        PolyError::Parse { message, position }
    }
}
