use std::fmt;
use std::ops::{AddAssign, MulAssign, Neg, SubAssign};
use std::str::FromStr;

use num_complex::Complex64;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{Backend, Coeff, ExactRational};
use crate::error::{Error, Result};

/// Double-precision complex value with finite components.
#[derive(Clone, Copy, PartialEq, Default)]
pub struct ComplexFloat(Complex64);

impl ComplexFloat {
    pub fn new(re: f64, im: f64) -> Result<Self> {
        let c = ComplexFloat(Complex64::new(re, im));
        c.check_finite()
    }

    pub fn real(re: f64) -> Result<Self> {
        Self::new(re, 0.0)
    }

    pub fn re(&self) -> f64 {
        self.0.re
    }

    pub fn im(&self) -> f64 {
        self.0.im
    }

    pub fn norm(&self) -> f64 {
        self.0.norm()
    }

    pub fn is_finite(&self) -> bool {
        self.0.re.is_finite() && self.0.im.is_finite()
    }

    pub fn exp(&self) -> Self {
        ComplexFloat(self.0.exp())
    }

    pub fn ln(&self) -> Self {
        ComplexFloat(self.0.ln())
    }

    fn check_finite(self) -> Result<Self> {
        if self.is_finite() {
            Ok(self)
        } else {
            Err(Error::NonFinite(format!("{}", self.0)))
        }
    }
}

/// `|a - b| <= tol` in complex modulus.
pub fn approx_eq(a: ComplexFloat, b: ComplexFloat, tol: f64) -> Result<bool> {
    if !(tol > 0.0) {
        return Err(Error::NonFinite(format!("tolerance {tol}")));
    }
    a.check_finite()?;
    b.check_finite()?;
    Ok((a.0 - b.0).norm() <= tol)
}

/// At least 15 significant digits; integral values print without exponent.
pub(crate) fn format_f64(v: f64) -> String {
    if v == 0.0 {
        "0".to_string()
    } else if v.fract() == 0.0 && v.abs() < 1e15 {
        format!("{v:.0}")
    } else if (1e-4..1e15).contains(&v.abs()) {
        format!("{v}")
    } else {
        format!("{v:e}")
    }
}

impl fmt::Display for ComplexFloat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let re = format_f64(self.0.re);
        if self.0.im == 0.0 {
            return f.write_str(&re);
        }
        let im = format_f64(self.0.im.abs());
        let sign = if self.0.im < 0.0 { '-' } else { '+' };
        write!(f, "{re}{sign}{im}i")
    }
}

impl fmt::Debug for ComplexFloat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({:?}, {:?})", self.0.re, self.0.im)
    }
}

impl FromStr for ComplexFloat {
    type Err = Error;

    /// Accepts `re`, `re+imi`, `re-imi` and rationals `p/q`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::ParseNumber(s.to_string());
        let t = s.trim();
        if let Some(body) = t.strip_suffix('i') {
            // split at the last sign that is not part of an exponent
            let bytes = body.as_bytes();
            let split = (1..bytes.len())
                .rev()
                .find(|&i| {
                    (bytes[i] == b'+' || bytes[i] == b'-')
                        && !matches!(bytes[i - 1], b'e' | b'E')
                })
                .ok_or_else(bad)?;
            let re: f64 = body[..split].parse().map_err(|_| bad())?;
            let im: f64 = body[split..].parse().map_err(|_| bad())?;
            return ComplexFloat::new(re, im);
        }
        if t.contains('/') {
            let r: ExactRational = t.parse()?;
            return ComplexFloat::real(r.to_f64());
        }
        ComplexFloat::real(t.parse().map_err(|_| bad())?)
    }
}

impl Serialize for ComplexFloat {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        [self.0.re, self.0.im].serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for ComplexFloat {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let [re, im] = <[f64; 2]>::deserialize(deserializer)?;
        ComplexFloat::new(re, im).map_err(serde::de::Error::custom)
    }
}

impl Neg for ComplexFloat {
    type Output = ComplexFloat;
    fn neg(self) -> Self {
        ComplexFloat(-self.0)
    }
}

impl<'a> AddAssign<&'a ComplexFloat> for ComplexFloat {
    fn add_assign(&mut self, rhs: &'a ComplexFloat) {
        self.0 += rhs.0;
    }
}

impl<'a> SubAssign<&'a ComplexFloat> for ComplexFloat {
    fn sub_assign(&mut self, rhs: &'a ComplexFloat) {
        self.0 -= rhs.0;
    }
}

impl<'a> MulAssign<&'a ComplexFloat> for ComplexFloat {
    fn mul_assign(&mut self, rhs: &'a ComplexFloat) {
        self.0 *= rhs.0;
    }
}

impl Coeff for ComplexFloat {
    const BACKEND: Backend = Backend::Complex;

    fn zero() -> Self {
        ComplexFloat(Complex64::new(0.0, 0.0))
    }

    fn one() -> Self {
        ComplexFloat(Complex64::new(1.0, 0.0))
    }

    fn from_i64(v: i64) -> Self {
        ComplexFloat(Complex64::new(v as f64, 0.0))
    }

    fn from_rational(r: &ExactRational) -> Self {
        ComplexFloat(Complex64::new(r.to_f64(), 0.0))
    }

    fn from_ratio(p: i64, q: i64) -> Result<Self> {
        if q == 0 {
            return Err(Error::DivisionByZero);
        }
        ComplexFloat::real(p as f64 / q as f64)
    }

    fn ln_of(n: u64) -> Result<Self> {
        if n == 0 {
            return Err(Error::Range { index: 0, range: "1.." });
        }
        ComplexFloat::real((n as f64).ln())
    }

    fn real_power(base: u64, exponent: f64) -> Result<Self> {
        ComplexFloat::real((base as f64).powf(exponent))
    }

    fn is_zero(&self) -> bool {
        self.0.re == 0.0 && self.0.im == 0.0
    }

    fn is_one(&self) -> bool {
        self.0.re == 1.0 && self.0.im == 0.0
    }

    fn is_negligible(&self, eps: f64) -> bool {
        self.0.norm() <= eps
    }

    fn close_to(&self, other: &Self, tol: f64) -> bool {
        (self.0 - other.0).norm() <= tol
    }

    fn mul_ref(&self, rhs: &Self) -> Self {
        ComplexFloat(self.0 * rhs.0)
    }

    fn add_product(&mut self, a: &Self, b: &Self) {
        self.0 += a.0 * b.0;
    }

    fn checked_div(&self, rhs: &Self) -> Result<Self> {
        if rhs.is_zero() {
            return Err(Error::DivisionByZero);
        }
        ComplexFloat(self.0 / rhs.0).check_finite()
    }

    fn magnitude(&self) -> f64 {
        self.0.norm()
    }

    fn parse_text(text: &str) -> Result<Self> {
        text.parse()
    }

    fn to_json(&self) -> serde_json::Value {
        serde_json::json!([self.0.re, self.0.im])
    }

    fn from_json(value: &serde_json::Value) -> Result<Self> {
        match value {
            serde_json::Value::Number(n) => ComplexFloat::real(n.as_f64().unwrap_or(f64::NAN)),
            serde_json::Value::String(s) => s.parse(),
            other => serde_json::from_value(other.clone())
                .map_err(|_| Error::ParseNumber(other.to_string())),
        }
    }

    fn pow_u32(&self, k: u32) -> Self {
        ComplexFloat(self.0.powu(k))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64) -> ComplexFloat {
        ComplexFloat::real(re).unwrap()
    }

    #[test]
    fn approx_eq_examples() {
        assert!(approx_eq(c(1.0), c(1.0 + 1e-12), 1e-9).unwrap());
        assert!(!approx_eq(c(0.0), c(1.0), 1e-9).unwrap());
        let round_trip = c(2.0).ln().exp();
        assert!(approx_eq(round_trip, c(2.0), 1e-9).unwrap());
    }

    #[test]
    fn approx_eq_rejects_bad_inputs() {
        let nan = ComplexFloat(Complex64::new(f64::NAN, 0.0));
        assert!(approx_eq(nan, c(1.0), 1e-9).is_err());
        assert!(approx_eq(c(1.0), c(1.0), 0.0).is_err());
    }

    #[test]
    fn non_finite_construction_is_an_error() {
        assert!(ComplexFloat::new(f64::INFINITY, 0.0).is_err());
        assert!(ComplexFloat::new(0.0, f64::NAN).is_err());
        assert_eq!(c(1.0).checked_div(&c(0.0)), Err(Error::DivisionByZero));
    }

    #[test]
    fn text_round_trip() {
        for v in [
            ComplexFloat::new(0.5, -2.25).unwrap(),
            ComplexFloat::new(-1e-20, 3e10).unwrap(),
            c(std::f64::consts::LN_2),
            c(12.0),
        ] {
            let text = v.to_string();
            let back: ComplexFloat = text.parse().unwrap();
            assert!(approx_eq(v, back, 1e-15 * (1.0 + v.norm())).unwrap(), "{text}");
        }
        assert_eq!(c(12.0).to_string(), "12");
        assert_eq!("1/4".parse::<ComplexFloat>().unwrap().re(), 0.25);
    }
}
