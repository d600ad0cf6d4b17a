//! Coefficient backends.
//!
//! Every arithmetical function stores its values in a type implementing
//! [`Coeff`]. Two backends exist: [`ExactRational`] (default, exact field
//! arithmetic over the rationals) and [`ComplexFloat`] (double precision,
//! needed whenever a value involves `ln n`).

mod complex;
mod rational;

use std::fmt;
use std::ops::{AddAssign, MulAssign, Neg, SubAssign};

pub use complex::{approx_eq, ComplexFloat};
pub use rational::{rational, ExactRational};

use crate::error::Result;

/// Default threshold below which a float value counts as zero when deciding
/// invertibility or support membership.
pub const DEFAULT_EPSILON: f64 = 1e-12;

/// Default tolerance used when comparing float values.
pub const DEFAULT_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Backend {
    Rational,
    Complex,
}

impl Backend {
    pub fn name(self) -> &'static str {
        match self {
            Backend::Rational => "rational",
            Backend::Complex => "complex",
        }
    }
}

impl fmt::Display for Backend {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Arithmetic contract shared by the coefficient backends.
///
/// Comparisons go through [`Coeff::close_to`]; the rational backend ignores
/// the tolerance and compares exactly.
pub trait Coeff:
    Clone
    + fmt::Debug
    + fmt::Display
    + Send
    + Sync
    + Neg<Output = Self>
    + for<'a> AddAssign<&'a Self>
    + for<'a> SubAssign<&'a Self>
    + for<'a> MulAssign<&'a Self>
    + 'static
{
    const BACKEND: Backend;

    fn zero() -> Self;
    fn one() -> Self;
    fn from_i64(v: i64) -> Self;
    fn from_rational(r: &ExactRational) -> Self;

    /// `p / q`; fails when `q == 0`.
    fn from_ratio(p: i64, q: i64) -> Result<Self>;

    /// `ln n`, or an unsupported-backend error where that is not representable.
    fn ln_of(n: u64) -> Result<Self>;

    /// `base^exponent` for a real exponent.
    fn real_power(base: u64, exponent: f64) -> Result<Self>;

    fn is_zero(&self) -> bool;
    fn is_one(&self) -> bool;

    /// Zero up to `eps` (exact zero for the rational backend).
    fn is_negligible(&self, eps: f64) -> bool;

    /// Equal up to `tol` in modulus (exact equality for the rational backend).
    fn close_to(&self, other: &Self, tol: f64) -> bool;

    fn mul_ref(&self, rhs: &Self) -> Self;

    /// `self += a * b`, the convolution kernel step.
    fn add_product(&mut self, a: &Self, b: &Self);

    fn checked_div(&self, rhs: &Self) -> Result<Self>;

    /// Modulus as a double; used for deviation reports and relative scaling.
    fn magnitude(&self) -> f64;

    fn parse_text(text: &str) -> Result<Self>;
    fn to_json(&self) -> serde_json::Value;
    fn from_json(value: &serde_json::Value) -> Result<Self>;

    fn pow_u32(&self, k: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..k {
            acc *= self;
        }
        acc
    }

    fn add_ref(&self, rhs: &Self) -> Self {
        let mut out = self.clone();
        out += rhs;
        out
    }

    fn sub_ref(&self, rhs: &Self) -> Self {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}
