//! Exact mould calculus over `Q(x1, ..., x8)`.
//!
//! The crate is `no_std` (with `alloc`). File formats, the command line and
//! parallel dispatch live in the `moulde` crate.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

mod error;
pub mod kernel;
pub mod lie;
pub mod mould;
pub mod solutions;
pub mod words;

pub use error::Error;
pub use kernel::{bernoulli, Monomial, Polynomial, Rational, RationalFunction, MAX_VARS};
pub use lie::Bracket;
pub use mould::{Instance, Mould, VerificationReport};
pub use words::{Word, WordSum};
