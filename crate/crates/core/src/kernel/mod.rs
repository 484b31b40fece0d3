//! Exact arithmetic: rationals, sparse polynomials, rational functions.

mod bernoulli;
pub mod gcd;
pub mod monomial;
pub mod parse;
pub mod poly;
pub mod ratfun;
pub mod rational;

pub use bernoulli::{bernoulli, binomial, factorial};
pub use monomial::{Monomial, MAX_VARS};
pub use poly::Polynomial;
pub use ratfun::RationalFunction;
pub use rational::Rational;
