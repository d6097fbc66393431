//! Exact computation with the weight Virasoro modules `L(W, λ, a, b)`.
//!
//! The crate is `no_std` and only needs `alloc`. Scalars are exact Gaussian
//! rationals, so every identity is checked with zero tolerance.
#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod algebra;
pub mod cm_compat;
pub mod error;
pub mod linalg;
pub mod loopmod;
pub mod pbw;
pub mod scalar;
pub mod seqcalc;
mod sparse;
pub mod structure;

pub use error::{Error, Result};
pub use scalar::{Rational, Scalar};
