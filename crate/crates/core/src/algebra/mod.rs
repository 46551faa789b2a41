//! Exact multivariate polynomials over the rationals.

mod monomial;
mod parse;
mod polynomial;
pub mod rational;

pub use monomial::{Monomial, MonomialOrder};
pub use polynomial::{partial_derivative, poly_mul, substitute, Alphabet, Polynomial, Ring};
pub use rational::{format_rational, parse_rational, rat, ratio, Rational};
