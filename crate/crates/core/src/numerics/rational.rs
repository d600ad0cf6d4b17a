use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{Backend, Coeff};
use crate::error::{Error, Result};

/// Arbitrary-precision rational in lowest terms with a positive denominator.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct ExactRational(BigRational);

/// Builds `p / q` in canonical form.
pub fn rational(p: i64, q: i64) -> Result<ExactRational> {
    ExactRational::new(BigInt::from(p), BigInt::from(q))
}

impl ExactRational {
    pub fn new(numer: BigInt, denom: BigInt) -> Result<Self> {
        if denom.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(ExactRational(BigRational::new(numer, denom)))
    }

    pub fn from_integer(v: impl Into<BigInt>) -> Self {
        ExactRational(BigRational::from_integer(v.into()))
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn recip(&self) -> Result<Self> {
        if self.0.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(ExactRational(self.0.recip()))
    }

    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or(f64::NAN)
    }

    pub fn as_big(&self) -> &BigRational {
        &self.0
    }
}

impl fmt::Display for ExactRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl fmt::Debug for ExactRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for ExactRational {
    type Err = Error;

    /// Accepts `p`, `p/q` and finite decimals such as `-0.125`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::ParseNumber(s.to_string());
        let t = s.trim();
        if let Some((p, q)) = t.split_once('/') {
            let p = BigInt::from_str(p.trim()).map_err(|_| bad())?;
            let q = BigInt::from_str(q.trim()).map_err(|_| bad())?;
            return ExactRational::new(p, q);
        }
        if let Some((int, frac)) = t.split_once('.') {
            if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
                return Err(bad());
            }
            let negative = int.starts_with('-');
            let int_digits = int.trim_start_matches(['-', '+']);
            if !int_digits.bytes().all(|b| b.is_ascii_digit()) {
                return Err(bad());
            }
            let digits = format!("{int_digits}{frac}");
            let mut numer = BigInt::from_str(&digits).map_err(|_| bad())?;
            if negative {
                numer = -numer;
            }
            let denom = num_traits::pow(BigInt::from(10u32), frac.len());
            return ExactRational::new(numer, denom);
        }
        BigInt::from_str(t)
            .map(ExactRational::from_integer)
            .map_err(|_| bad())
    }
}

impl Serialize for ExactRational {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for ExactRational {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let text = String::deserialize(deserializer)?;
        text.parse().map_err(serde::de::Error::custom)
    }
}

impl Neg for ExactRational {
    type Output = ExactRational;
    fn neg(self) -> Self {
        ExactRational(-self.0)
    }
}

impl<'a> AddAssign<&'a ExactRational> for ExactRational {
    fn add_assign(&mut self, rhs: &'a ExactRational) {
        self.0 += &rhs.0;
    }
}

impl<'a> SubAssign<&'a ExactRational> for ExactRational {
    fn sub_assign(&mut self, rhs: &'a ExactRational) {
        self.0 -= &rhs.0;
    }
}

impl<'a> MulAssign<&'a ExactRational> for ExactRational {
    fn mul_assign(&mut self, rhs: &'a ExactRational) {
        self.0 *= &rhs.0;
    }
}

impl Add for ExactRational {
    type Output = ExactRational;
    fn add(self, rhs: Self) -> Self {
        ExactRational(self.0 + rhs.0)
    }
}

impl Sub for ExactRational {
    type Output = ExactRational;
    fn sub(self, rhs: Self) -> Self {
        ExactRational(self.0 - rhs.0)
    }
}

impl Mul for ExactRational {
    type Output = ExactRational;
    fn mul(self, rhs: Self) -> Self {
        ExactRational(self.0 * rhs.0)
    }
}

impl Coeff for ExactRational {
    const BACKEND: Backend = Backend::Rational;

    fn zero() -> Self {
        ExactRational(BigRational::zero())
    }

    fn one() -> Self {
        ExactRational(BigRational::one())
    }

    fn from_i64(v: i64) -> Self {
        ExactRational::from_integer(v)
    }

    fn from_rational(r: &ExactRational) -> Self {
        r.clone()
    }

    fn from_ratio(p: i64, q: i64) -> Result<Self> {
        rational(p, q)
    }

    fn ln_of(n: u64) -> Result<Self> {
        if n == 1 {
            return Ok(Self::zero());
        }
        Err(Error::UnsupportedBackend {
            operation: format!("ln {n}"),
            backend: Backend::Rational.name(),
        })
    }

    fn real_power(base: u64, exponent: f64) -> Result<Self> {
        if exponent.fract() != 0.0 || exponent < 0.0 || exponent > u32::MAX as f64 {
            return Err(Error::UnsupportedBackend {
                operation: format!("power with exponent {exponent}"),
                backend: Backend::Rational.name(),
            });
        }
        Ok(ExactRational::from_integer(num_traits::pow(
            BigInt::from(base),
            exponent as usize,
        )))
    }

    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    fn is_one(&self) -> bool {
        self.0.is_one()
    }

    fn is_negligible(&self, _eps: f64) -> bool {
        self.0.is_zero()
    }

    fn close_to(&self, other: &Self, _tol: f64) -> bool {
        self == other
    }

    fn mul_ref(&self, rhs: &Self) -> Self {
        ExactRational(&self.0 * &rhs.0)
    }

    fn add_product(&mut self, a: &Self, b: &Self) {
        if a.0.is_zero() || b.0.is_zero() {
            return;
        }
        self.0 += &a.0 * &b.0;
    }

    fn checked_div(&self, rhs: &Self) -> Result<Self> {
        if rhs.0.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(ExactRational(&self.0 / &rhs.0))
    }

    fn magnitude(&self) -> f64 {
        self.0.abs().to_f64().unwrap_or(f64::INFINITY)
    }

    fn parse_text(text: &str) -> Result<Self> {
        text.parse()
    }

    fn to_json(&self) -> serde_json::Value {
        serde_json::Value::String(self.to_string())
    }

    fn from_json(value: &serde_json::Value) -> Result<Self> {
        match value {
            serde_json::Value::String(s) => s.parse(),
            serde_json::Value::Number(n) if n.is_i64() => Ok(Self::from_i64(n.as_i64().unwrap())),
            other => Err(Error::ParseNumber(other.to_string())),
        }
    }

    fn pow_u32(&self, k: u32) -> Self {
        ExactRational(num_traits::pow(self.0.clone(), k as usize))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_form() {
        assert_eq!(rational(2, 4).unwrap().to_string(), "1/2");
        assert_eq!(rational(0, 7).unwrap(), ExactRational::zero());
        assert_eq!(rational(0, 7).unwrap().denom(), &BigInt::from(1));
        let r = rational(3, -6).unwrap();
        assert_eq!(r.to_string(), "-1/2");
        assert!(r.denom() > &BigInt::from(0));
    }

    #[test]
    fn zero_denominator_rejected() {
        assert_eq!(rational(1, 0), Err(Error::DivisionByZero));
        assert_eq!(
            ExactRational::one().checked_div(&ExactRational::zero()),
            Err(Error::DivisionByZero)
        );
        assert!(ExactRational::zero().recip().is_err());
    }

    #[test]
    fn parses_fractions_and_decimals() {
        assert_eq!("7".parse::<ExactRational>().unwrap(), rational(7, 1).unwrap());
        assert_eq!("-1/2".parse::<ExactRational>().unwrap(), rational(-1, 2).unwrap());
        assert_eq!("-0.125".parse::<ExactRational>().unwrap(), rational(-1, 8).unwrap());
        assert_eq!("4/6".parse::<ExactRational>().unwrap().to_string(), "2/3");
        assert!("1/0".parse::<ExactRational>().is_err());
        assert!("abc".parse::<ExactRational>().is_err());
        assert!("1.".parse::<ExactRational>().is_err());
    }

    #[test]
    fn ln_is_unsupported_except_at_one() {
        assert!(ExactRational::ln_of(1).unwrap().is_zero());
        assert!(matches!(
            ExactRational::ln_of(2),
            Err(Error::UnsupportedBackend { .. })
        ));
        assert_eq!(ExactRational::real_power(3, 2.0).unwrap(), ExactRational::from_i64(9));
        assert!(ExactRational::real_power(3, 0.5).is_err());
    }

    #[test]
    fn json_round_trip() {
        let r = rational(-5, 3).unwrap();
        let v = r.to_json();
        assert_eq!(v, serde_json::json!("-5/3"));
        assert_eq!(ExactRational::from_json(&v).unwrap(), r);
    }
}
