//! Arithmetical functions truncated at a bound `N`.
//!
//! The crate models the ring of arithmetical functions under pointwise sum
//! and Dirichlet convolution, the formal logarithm and exponential between
//! `I + M` and `M`, the Bell-series description of multiplicative and
//! additive functions, and the isomorphism `psi(a) = u * log(a)` from the
//! multiplicative group onto the additive group.

pub mod catalogue;
pub mod cli;
pub mod dirichlet;
pub mod error;
pub mod numerics;
pub mod sieve;
pub mod structure;
pub mod transcend;

pub use dirichlet::ArithFn;
pub use error::{Error, Result, Witness};
pub use numerics::{Backend, Coeff, ComplexFloat, ExactRational};
pub use sieve::SpfSieve;
