//! Exact scalar, polynomial and matrix arithmetic.

mod matrix;
mod poly;
mod rational;

pub use matrix::{poly_det, RationalMatrix};
pub use poly::{Monomial, MultiPoly};
pub use rational::{format_rational, parse_rational, rat, Rational};
