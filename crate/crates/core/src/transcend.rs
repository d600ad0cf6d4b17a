//! Formal logarithm and exponential of arithmetical functions, and the
//! isomorphism `psi` between the multiplicative and additive groups.
//!
//! `log` maps `I + M` (functions with `a(1) = 1`) onto `M` (functions with
//! `a(1) = 0`) and `exp` is its inverse. Both are evaluated by truncating
//! their series after `K = floor(log2 N)` terms. The truncation is exact on
//! `1..=N`: for `b` in `M`, `b^{*k}(n)` vanishes once `k > Omega(n)`, and
//! `Omega(n) <= log2 n`.

use crate::dirichlet::{dirichlet_div, dirichlet_mul, point_add, scalar_mul, ArithFn};
use crate::error::{Error, Result};
use crate::numerics::Coeff;

/// Number of series terms that makes `log`/`exp` exact at `bound`.
pub fn series_terms(bound: usize) -> u32 {
    bound.max(1).ilog2()
}

fn require_unit<C: Coeff>(a: &ArithFn<C>, operation: &'static str) -> Result<()> {
    if a[1].is_one() {
        Ok(())
    } else {
        Err(Error::Domain {
            operation,
            expected: "a(1) = 1",
            found: a[1].to_string(),
        })
    }
}

fn require_ideal<C: Coeff>(a: &ArithFn<C>, operation: &'static str) -> Result<()> {
    if a[1].is_zero() {
        Ok(())
    } else {
        Err(Error::Domain {
            operation,
            expected: "a(1) = 0",
            found: a[1].to_string(),
        })
    }
}

/// `log(a)`, requiring `a(1) = 1` exactly.
pub fn dlog<C: Coeff>(a: &ArithFn<C>) -> Result<ArithFn<C>> {
    dlog_truncated(a, series_terms(a.bound()))
}

/// Partial sum `sum_{k=1}^{terms} (-1)^{k-1} (a - I)^{*k} / k`.
pub fn dlog_truncated<C: Coeff>(a: &ArithFn<C>, terms: u32) -> Result<ArithFn<C>> {
    require_unit(a, "log")?;
    let b = a.with_value_at_one(C::zero());
    let mut sum = ArithFn::zero(a.bound())?;
    let mut power = b.clone();
    for k in 1..=terms {
        let sign = if k % 2 == 1 { 1 } else { -1 };
        let coef = C::from_ratio(sign, k as i64)?;
        sum = point_add(&sum, &scalar_mul(&coef, &power))?;
        if k < terms {
            power = dirichlet_mul(&power, &b)?;
        }
    }
    Ok(sum)
}

/// `exp(a)`, requiring `a(1) = 0` exactly.
pub fn dexp<C: Coeff>(a: &ArithFn<C>) -> Result<ArithFn<C>> {
    dexp_truncated(a, series_terms(a.bound()))
}

/// Partial sum `I + sum_{k=1}^{terms} a^{*k} / k!`.
pub fn dexp_truncated<C: Coeff>(a: &ArithFn<C>, terms: u32) -> Result<ArithFn<C>> {
    require_ideal(a, "exp")?;
    let mut sum = ArithFn::identity(a.bound())?;
    let mut power = a.clone();
    let mut inv_factorial = C::one();
    for k in 1..=terms {
        inv_factorial *= &C::from_ratio(1, k as i64)?;
        sum = point_add(&sum, &scalar_mul(&inv_factorial, &power))?;
        if k < terms {
            power = dirichlet_mul(&power, a)?;
        }
    }
    Ok(sum)
}

/// `psi(a) = u * log(a)`; carries multiplicative functions to additive ones.
pub fn psi<C: Coeff>(a: &ArithFn<C>) -> Result<ArithFn<C>> {
    require_unit(a, "psi")?;
    let log_a = dlog(a)?;
    let u = ArithFn::constant(a.bound(), C::one())?;
    dirichlet_mul(&u, &log_a)
}

/// `psi^{-1}(a) = exp(mu * a)`.
pub fn psi_inv<C: Coeff>(a: &ArithFn<C>) -> Result<ArithFn<C>> {
    require_ideal(a, "psi_inv")?;
    let u = ArithFn::constant(a.bound(), C::one())?;
    // mu * a is the solution x of u * x = a
    dexp(&dirichlet_div(a, &u)?)
}

/// `a / a(1)`: moves a function with invertible `a(1)` into `I + M`.
pub fn normalize_unit<C: Coeff>(a: &ArithFn<C>) -> Result<ArithFn<C>> {
    let inv = C::one().checked_div(&a[1])?;
    Ok(scalar_mul(&inv, a))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dirichlet::{derivative, dirichlet_inv, dirichlet_pow};
    use crate::numerics::{rational, ComplexFloat, ExactRational};

    type Q = ExactRational;

    fn u(bound: usize) -> ArithFn<Q> {
        ArithFn::constant(bound, Q::one()).unwrap()
    }

    fn sample_unit(bound: usize, seed: i64) -> ArithFn<Q> {
        ArithFn::from_fn(bound, |n| {
            if n == 1 {
                Q::one()
            } else {
                rational((n as i64 * 31 + seed * 17) % 7 - 3, (n as i64 + seed) % 4 + 1).unwrap()
            }
        })
        .unwrap()
    }

    #[test]
    fn term_count() {
        assert_eq!(series_terms(1), 0);
        assert_eq!(series_terms(2), 1);
        assert_eq!(series_terms(4095), 11);
        assert_eq!(series_terms(4096), 12);
    }

    #[test]
    fn log_examples() {
        let id = ArithFn::<Q>::identity(64).unwrap();
        assert_eq!(dlog(&id).unwrap(), ArithFn::zero(64).unwrap());
        let l = dlog(&u(64)).unwrap();
        for p in [2, 3, 5, 7, 61] {
            assert_eq!(l[p], Q::one());
        }
        assert_eq!(l[4], rational(1, 2).unwrap());
        // log(u)(n) = 1/k on p^k and 0 off prime powers
        assert_eq!(l[8], rational(1, 3).unwrap());
        assert_eq!(l[6], Q::zero());
        assert_eq!(l[1], Q::zero());
    }

    #[test]
    fn log_matches_longer_partial_sums() {
        let a = sample_unit(300, 2);
        let k = series_terms(300);
        assert_eq!(dlog(&a).unwrap(), dlog_truncated(&a, k + 3).unwrap());
        let b = dlog(&a).unwrap();
        assert_eq!(dexp(&b).unwrap(), dexp_truncated(&b, k + 3).unwrap());
    }

    #[test]
    fn domain_errors() {
        let a = u(10).with_value_at_one(Q::from_i64(2));
        assert_eq!(
            dlog(&a),
            Err(Error::Domain { operation: "log", expected: "a(1) = 1", found: "2".into() })
        );
        assert!(matches!(psi(&a), Err(Error::Domain { operation: "psi", .. })));
        assert!(matches!(dexp(&u(10)), Err(Error::Domain { operation: "exp", .. })));
        assert!(matches!(psi_inv(&u(10)), Err(Error::Domain { operation: "psi_inv", .. })));
    }

    #[test]
    fn exp_examples() {
        let zero = ArithFn::<Q>::zero(100).unwrap();
        assert_eq!(dexp(&zero).unwrap(), ArithFn::identity(100).unwrap());
        let a = sample_unit(500, 3);
        assert_eq!(dexp(&dlog(&a).unwrap()).unwrap(), a);
        let m = sample_unit(500, 4).with_value_at_one(Q::zero());
        assert_eq!(dlog(&dexp(&m).unwrap()).unwrap(), m);
    }

    #[test]
    fn psi_examples() {
        let zero = ArithFn::<Q>::zero(30).unwrap();
        assert_eq!(psi(&ArithFn::identity(30).unwrap()).unwrap(), zero);
        let p = psi(&u(30)).unwrap();
        assert_eq!(p[4], rational(3, 2).unwrap());
        assert_eq!(p[6], Q::from_i64(2));
        assert_eq!(psi_inv(&zero).unwrap(), ArithFn::identity(30).unwrap());
        assert_eq!(psi_inv(&p).unwrap(), u(30));
    }

    #[test]
    fn exp_matches_omega_derivation_recurrence() {
        // D(f)(n) = Omega(n) f(n) is a derivation, so e = exp(a) solves
        // Omega(n) e(n) = sum_{d | n, d > 1} Omega(d) a(d) e(n/d).
        let bound = 720;
        let omega = |mut n: usize| {
            let mut c = 0i64;
            let mut p = 2;
            while n > 1 {
                while n % p == 0 {
                    n /= p;
                    c += 1;
                }
                p += 1;
            }
            c
        };
        let a = sample_unit(bound, 5).with_value_at_one(Q::zero());
        let mut e = vec![Q::zero(); bound + 1];
        e[1] = Q::one();
        for n in 2..=bound {
            let mut s = Q::zero();
            for d in (2..=n).filter(|d| n % d == 0) {
                s += &(Q::from_i64(omega(d)) * a[d].clone() * e[n / d].clone());
            }
            e[n] = s.checked_div(&Q::from_i64(omega(n))).unwrap();
        }
        let expected = ArithFn::from_values(e[1..].to_vec()).unwrap();
        assert_eq!(dexp(&a).unwrap(), expected);
    }

    #[test]
    fn extra_powers_vanish() {
        let bound = 256;
        let b = ArithFn::from_fn(bound, |n| {
            if n == 1 { Q::zero() } else { rational(n as i64 % 5 + 1, n as i64 % 3 + 1).unwrap() }
        })
        .unwrap();
        let k = series_terms(bound);
        let zero = ArithFn::zero(bound).unwrap();
        assert_ne!(dirichlet_pow(&b, k).unwrap(), zero);
        for extra in 1..=5 {
            assert_eq!(dirichlet_pow(&b, k + extra).unwrap(), zero);
        }
    }

    #[test]
    fn float_derivative_identities() {
        let bound = 600;
        let a = ArithFn::from_fn(bound, |n| {
            let v = if n == 1 { 1.0 } else { ((n * 37 % 19) as f64 - 9.0) / 10.0 };
            ComplexFloat::new(v, ((n * 13 % 7) as f64 - 3.0) / 20.0).unwrap()
        })
        .unwrap()
        .with_value_at_one(ComplexFloat::one());
        let da = derivative(&a).unwrap();
        let lhs = derivative(&dlog(&a).unwrap()).unwrap();
        let rhs = dirichlet_mul(&da, &dirichlet_inv(&a).unwrap()).unwrap();
        assert!(lhs.max_deviation(&rhs).unwrap().0 < 1e-9);

        let m = a.with_value_at_one(ComplexFloat::zero());
        let e = dexp(&m).unwrap();
        let lhs = derivative(&e).unwrap();
        let rhs = dirichlet_mul(&derivative(&m).unwrap(), &e).unwrap();
        assert!(lhs.max_deviation(&rhs).unwrap().0 < 1e-9);
    }

    #[test]
    fn normalization() {
        let a = u(12).with_value_at_one(Q::from_i64(4));
        let n = normalize_unit(&a).unwrap();
        assert!(n[1].is_one());
        assert_eq!(n[2], rational(1, 4).unwrap());
        assert!(normalize_unit(&u(5).with_value_at_one(Q::zero())).is_err());
    }
}
