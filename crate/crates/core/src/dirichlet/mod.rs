//! Arithmetical functions truncated at a bound `N`, and the ring operations
//! on them.
//!
//! An [`ArithFn`] stores `a(1), ..., a(N)`: the coefficients of the series
//! `a(1) + a(2)[x]^2 + ... + a(N)[x]^N`. Every operation here computes the
//! value at `n` from values at divisors of `n` only, so results on `1..=N`
//! are exact and do not depend on the bound (computing at `2N` and
//! restricting to `N` gives the same table).
//!
//! Convolutions accumulate each output in ascending divisor order regardless
//! of how the work is split across threads, so float results are
//! bit-reproducible.

mod io;

use std::ops::Index;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::numerics::{Coeff, DEFAULT_EPSILON};

pub use io::{read_csv, read_json, write_csv, write_json, FnDocument};

/// Outputs per parallel work item in [`dirichlet_mul`].
const CONVOLUTION_CHUNK: usize = 2048;

#[derive(Clone, Debug, PartialEq)]
pub struct ArithFn<C> {
    values: Vec<C>,
}

impl<C: Coeff> ArithFn<C> {
    /// Takes `values[i] = a(i + 1)`.
    pub fn from_values(values: Vec<C>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::InvalidBound(0));
        }
        Ok(ArithFn { values })
    }

    pub fn from_fn(bound: usize, mut f: impl FnMut(usize) -> C) -> Result<Self> {
        if bound == 0 {
            return Err(Error::InvalidBound(0));
        }
        Ok(ArithFn {
            values: (1..=bound).map(&mut f).collect(),
        })
    }

    pub fn try_from_fn(bound: usize, f: impl FnMut(usize) -> Result<C>) -> Result<Self> {
        if bound == 0 {
            return Err(Error::InvalidBound(0));
        }
        Ok(ArithFn {
            values: (1..=bound).map(f).collect::<Result<_>>()?,
        })
    }

    pub fn zero(bound: usize) -> Result<Self> {
        Self::from_fn(bound, |_| C::zero())
    }

    /// The Dirichlet unit `I`: 1 at n = 1, 0 elsewhere.
    pub fn identity(bound: usize) -> Result<Self> {
        Self::from_fn(bound, |n| if n == 1 { C::one() } else { C::zero() })
    }

    pub fn constant(bound: usize, c: C) -> Result<Self> {
        Self::from_fn(bound, |_| c.clone())
    }

    pub fn bound(&self) -> usize {
        self.values.len()
    }

    /// `a(n)` for `1 <= n <= N`.
    pub fn get(&self, n: usize) -> Option<&C> {
        n.checked_sub(1).and_then(|i| self.values.get(i))
    }

    pub fn try_get(&self, n: usize) -> Result<&C> {
        self.get(n).ok_or(Error::OutOfRange {
            index: n,
            bound: self.bound(),
        })
    }

    pub fn values(&self) -> &[C] {
        &self.values
    }

    pub fn into_values(self) -> Vec<C> {
        self.values
    }

    /// `(n, a(n))` pairs in index order.
    pub fn iter(&self) -> impl Iterator<Item = (usize, &C)> {
        self.values.iter().enumerate().map(|(i, v)| (i + 1, v))
    }

    /// Same function on `1..=bound`.
    pub fn restrict(&self, bound: usize) -> Result<Self> {
        if bound == 0 {
            return Err(Error::InvalidBound(0));
        }
        if bound > self.bound() {
            return Err(Error::BoundMismatch {
                left: self.bound(),
                right: bound,
            });
        }
        Ok(ArithFn {
            values: self.values[..bound].to_vec(),
        })
    }

    /// `a + c * I`: changes only the value at n = 1.
    pub fn with_value_at_one(&self, c: C) -> Self {
        let mut values = self.values.clone();
        values[0] = c;
        ArithFn { values }
    }

    /// Same bound and every value within `tol` (exact equality for the
    /// rational backend).
    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        self.bound() == other.bound()
            && self
                .values
                .iter()
                .zip(&other.values)
                .all(|(x, y)| x.close_to(y, tol))
    }

    /// Largest modulus of `a(n) - b(n)` and the first index attaining it.
    pub fn max_deviation(&self, other: &Self) -> Result<(f64, usize)> {
        check_bounds(self, other)?;
        let mut worst = (0.0, 1);
        for (i, (x, y)) in self.values.iter().zip(&other.values).enumerate() {
            let dev = x.sub_ref(y).magnitude();
            if dev > worst.0 {
                worst = (dev, i + 1);
            }
        }
        Ok(worst)
    }

    /// Least `n` where the two functions differ beyond `tol`.
    pub fn first_difference(&self, other: &Self, tol: f64) -> Result<Option<usize>> {
        check_bounds(self, other)?;
        Ok(self
            .values
            .iter()
            .zip(&other.values)
            .position(|(x, y)| !x.close_to(y, tol))
            .map(|i| i + 1))
    }
}

impl<C> Index<usize> for ArithFn<C> {
    type Output = C;

    /// One-based: `a[n]` is `a(n)`. Panics outside `1..=N`.
    fn index(&self, n: usize) -> &C {
        assert!(n >= 1, "arithmetical functions are indexed from 1");
        &self.values[n - 1]
    }
}

fn check_bounds<C>(a: &ArithFn<C>, b: &ArithFn<C>) -> Result<()> {
    if a.values.len() != b.values.len() {
        return Err(Error::BoundMismatch {
            left: a.values.len(),
            right: b.values.len(),
        });
    }
    Ok(())
}

pub fn point_add<C: Coeff>(a: &ArithFn<C>, b: &ArithFn<C>) -> Result<ArithFn<C>> {
    check_bounds(a, b)?;
    Ok(ArithFn {
        values: a.values.iter().zip(&b.values).map(|(x, y)| x.add_ref(y)).collect(),
    })
}

pub fn point_sub<C: Coeff>(a: &ArithFn<C>, b: &ArithFn<C>) -> Result<ArithFn<C>> {
    check_bounds(a, b)?;
    Ok(ArithFn {
        values: a.values.iter().zip(&b.values).map(|(x, y)| x.sub_ref(y)).collect(),
    })
}

pub fn scalar_mul<C: Coeff>(r: &C, a: &ArithFn<C>) -> ArithFn<C> {
    ArithFn {
        values: a.values.iter().map(|x| r.mul_ref(x)).collect(),
    }
}

/// `(a * b)(n) = sum over d | n of a(d) b(n/d)`.
pub fn dirichlet_mul<C: Coeff>(a: &ArithFn<C>, b: &ArithFn<C>) -> Result<ArithFn<C>> {
    check_bounds(a, b)?;
    let bound = a.bound();
    let mut out = vec![C::zero(); bound];
    out.par_chunks_mut(CONVOLUTION_CHUNK)
        .enumerate()
        .for_each(|(chunk, slot)| {
            let lo = chunk * CONVOLUTION_CHUNK + 1;
            let hi = lo + slot.len() - 1;
            convolve_range(&a.values, &b.values, lo, hi, slot);
        });
    Ok(ArithFn { values: out })
}

// Accumulates outputs lo..=hi, outer loop over d ascending.
fn convolve_range<C: Coeff>(a: &[C], b: &[C], lo: usize, hi: usize, out: &mut [C]) {
    for d in 1..=hi {
        let ad = &a[d - 1];
        if ad.is_zero() {
            continue;
        }
        let first = lo.div_ceil(d);
        for m in first..=hi / d {
            out[d * m - lo].add_product(ad, &b[m - 1]);
        }
    }
}

/// Solves `b * x = a` for `x`; requires `b(1) != 0`.
pub fn dirichlet_div<C: Coeff>(a: &ArithFn<C>, b: &ArithFn<C>) -> Result<ArithFn<C>> {
    dirichlet_div_with_epsilon(a, b, DEFAULT_EPSILON)
}

pub fn dirichlet_div_with_epsilon<C: Coeff>(
    a: &ArithFn<C>,
    b: &ArithFn<C>,
    eps: f64,
) -> Result<ArithFn<C>> {
    check_bounds(a, b)?;
    let b1 = &b.values[0];
    if b1.is_negligible(eps) {
        return Err(Error::NonInvertible {
            value: b1.to_string(),
        });
    }
    let inv_b1 = C::one().checked_div(b1)?;
    let bound = a.bound();
    // acc[n] collects sum over proper divisors d of x(d) b(n/d), d ascending.
    let mut acc = vec![C::zero(); bound];
    let mut x = Vec::with_capacity(bound);
    for n in 1..=bound {
        let mut xn = a.values[n - 1].sub_ref(&acc[n - 1]);
        xn *= &inv_b1;
        if !xn.is_zero() {
            for m in 2..=bound / n {
                acc[n * m - 1].add_product(&xn, &b.values[m - 1]);
            }
        }
        x.push(xn);
    }
    Ok(ArithFn { values: x })
}

/// Dirichlet inverse; fails when `a(1)` is zero (or below the default
/// epsilon in the float backend).
pub fn dirichlet_inv<C: Coeff>(a: &ArithFn<C>) -> Result<ArithFn<C>> {
    dirichlet_inv_with_epsilon(a, DEFAULT_EPSILON)
}

pub fn dirichlet_inv_with_epsilon<C: Coeff>(a: &ArithFn<C>, eps: f64) -> Result<ArithFn<C>> {
    dirichlet_div_with_epsilon(&ArithFn::identity(a.bound())?, a, eps)
}

/// `a^{*k}` by repeated squaring; `a^{*0} = I`.
pub fn dirichlet_pow<C: Coeff>(a: &ArithFn<C>, k: u32) -> Result<ArithFn<C>> {
    let mut result = ArithFn::identity(a.bound())?;
    let mut base = a.clone();
    let mut k = k;
    while k > 0 {
        if k & 1 == 1 {
            result = dirichlet_mul(&result, &base)?;
        }
        k >>= 1;
        if k > 0 {
            base = dirichlet_mul(&base, &base)?;
        }
    }
    Ok(result)
}

/// `a'(n) = a(n) ln n`. Only the float backend can represent the result.
pub fn derivative<C: Coeff>(a: &ArithFn<C>) -> Result<ArithFn<C>> {
    if a.bound() > 1 {
        // surface the backend error even when every value happens to be zero
        C::ln_of(2)?;
    }
    ArithFn::try_from_fn(a.bound(), |n| Ok(a[n].mul_ref(&C::ln_of(n as u64)?)))
}

/// Least `n` with `a(n) != 0`, or `None` for the zero function.
pub fn valuation<C: Coeff>(a: &ArithFn<C>) -> Option<usize> {
    valuation_with_epsilon(a, DEFAULT_EPSILON)
}

pub fn valuation_with_epsilon<C: Coeff>(a: &ArithFn<C>, eps: f64) -> Option<usize> {
    a.values.iter().position(|v| !v.is_negligible(eps)).map(|i| i + 1)
}

/// Ascending indices with a nonzero value.
pub fn support<C: Coeff>(a: &ArithFn<C>) -> Vec<usize> {
    support_with_epsilon(a, DEFAULT_EPSILON)
}

pub fn support_with_epsilon<C: Coeff>(a: &ArithFn<C>, eps: f64) -> Vec<usize> {
    a.iter()
        .filter(|(_, v)| !v.is_negligible(eps))
        .map(|(n, _)| n)
        .collect()
}
