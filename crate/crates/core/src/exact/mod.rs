//! Exact arithmetic: rationals, polynomials over ℚ and rational functions.

pub mod polynomial;
pub mod rational;
pub mod rational_function;

pub use polynomial::{poly_gcd, rational_roots, Polynomial};
pub use rational::{q, rat_arith, ArithOp, Rational};
pub use rational_function::{rf_arith, rf_eval, RationalFunction};
