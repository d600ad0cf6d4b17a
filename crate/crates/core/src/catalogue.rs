//! The classical arithmetical functions, each built from its elementary
//! definition, and an executable check of their Euler-product closed forms.

use std::fmt;

use crate::dirichlet::{derivative, dirichlet_div, dirichlet_mul, ArithFn};
use crate::error::{Error, Result};
use crate::numerics::{Backend, Coeff, ComplexFloat, ExactRational};
use crate::sieve::SpfSieve;
use crate::structure::{
    additive_reconstruct, bell_reconstruct_mult, BellDecomposition, BellKind, PrimeSupport,
};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Named {
    /// Dirichlet unit `I`.
    Identity,
    /// `u(n) = 1`.
    Unit,
    Mobius,
    Phi,
    /// von Mangoldt `Lambda(p^k) = ln p`.
    Mangoldt,
    /// Liouville `lambda(n) = (-1)^Omega(n)`.
    Liouville,
    /// Number of divisors.
    Divisors,
    /// `sigma_c(n) = sum_{d | n} d^c`.
    Sigma(ExactRational),
    /// `N(n) = n`.
    IdN,
    /// Number of distinct prime factors.
    Nu,
    /// Number of prime factors with multiplicity.
    BigOmega,
}

impl Named {
    /// Names without arguments, as written in expressions.
    pub const SIMPLE: [(&'static str, Named); 10] = [
        ("I", Named::Identity),
        ("u", Named::Unit),
        ("mu", Named::Mobius),
        ("phi", Named::Phi),
        ("Lambda", Named::Mangoldt),
        ("lambda_liouville", Named::Liouville),
        ("d", Named::Divisors),
        ("N", Named::IdN),
        ("nu", Named::Nu),
        ("Omega", Named::BigOmega),
    ];

    pub fn from_name(name: &str) -> Option<Named> {
        Self::SIMPLE
            .iter()
            .find(|(n, _)| *n == name)
            .map(|(_, f)| f.clone())
    }

    pub fn requires_float(&self) -> bool {
        match self {
            Named::Mangoldt => true,
            Named::Sigma(c) => !c.is_integer() || c.numer().sign() == num_bigint::Sign::Minus,
            _ => false,
        }
    }
}

impl fmt::Display for Named {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Named::Sigma(c) = self {
            return write!(f, "sigma({c})");
        }
        let name = Self::SIMPLE
            .iter()
            .find(|(_, g)| g == self)
            .map(|(n, _)| *n)
            .unwrap_or("?");
        f.write_str(name)
    }
}

/// Builds `name` on `1..=sieve.bound()` in backend `C`.
pub fn make<C: Coeff>(name: &Named, sieve: &SpfSieve) -> Result<ArithFn<C>> {
    let bound = sieve.bound();
    let factored = |f: &dyn Fn(&[(usize, u32)], usize) -> C| {
        ArithFn::try_from_fn(bound, |n| Ok(f(&sieve.factorize(n)?, n)))
    };
    match name {
        Named::Identity => ArithFn::identity(bound),
        Named::Unit => ArithFn::constant(bound, C::one()),
        Named::Mobius => factored(&|fs, _| {
            if fs.iter().any(|&(_, k)| k > 1) {
                C::zero()
            } else if fs.len() % 2 == 0 {
                C::one()
            } else {
                -C::one()
            }
        }),
        Named::Phi => factored(&|fs, n| {
            // n * prod (1 - 1/p), kept integral by dividing first
            let v = fs.iter().fold(n, |acc, &(p, _)| acc / p * (p - 1));
            C::from_i64(v as i64)
        }),
        Named::Mangoldt => {
            if C::BACKEND == Backend::Rational {
                return Err(Error::UnsupportedBackend {
                    operation: "Lambda".into(),
                    backend: C::BACKEND.name(),
                });
            }
            ArithFn::try_from_fn(bound, |n| match sieve.factorize(n)?.as_slice() {
                [(p, _)] => C::ln_of(*p as u64),
                _ => Ok(C::zero()),
            })
        }
        Named::Liouville => factored(&|fs, _| {
            let omega: u32 = fs.iter().map(|&(_, k)| k).sum();
            if omega % 2 == 0 {
                C::one()
            } else {
                -C::one()
            }
        }),
        Named::Divisors => factored(&|fs, _| {
            C::from_i64(fs.iter().map(|&(_, k)| k as i64 + 1).product())
        }),
        Named::Sigma(c) => sigma(c, bound),
        Named::IdN => ArithFn::from_fn(bound, |n| C::from_i64(n as i64)),
        Named::Nu => factored(&|fs, _| C::from_i64(fs.len() as i64)),
        Named::BigOmega => factored(&|fs, _| C::from_i64(fs.iter().map(|&(_, k)| k as i64).sum())),
    }
}

fn sigma<C: Coeff>(c: &ExactRational, bound: usize) -> Result<ArithFn<C>> {
    if C::BACKEND == Backend::Rational && Named::Sigma(c.clone()).requires_float() {
        return Err(Error::UnsupportedBackend {
            operation: format!("sigma({c})"),
            backend: C::BACKEND.name(),
        });
    }
    let exponent = c.to_f64();
    let powers = (1..=bound)
        .map(|d| C::real_power(d as u64, exponent))
        .collect::<Result<Vec<C>>>()?;
    let mut values = vec![C::zero(); bound];
    for d in 1..=bound {
        for m in (d..=bound).step_by(d) {
            values[m - 1] += &powers[d - 1];
        }
    }
    ArithFn::from_values(values)
}

/// Result of checking one closed form.
#[derive(Debug, Clone, PartialEq)]
pub struct IdentityCheck {
    pub name: &'static str,
    pub bound: usize,
    pub backend: Backend,
    pub passed: bool,
    pub first_failure: Option<usize>,
    /// Largest absolute deviation; float identities only.
    pub max_deviation: Option<f64>,
}

impl fmt::Display for IdentityCheck {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.passed { "PASS" } else { "FAIL" };
        write!(f, "{status} {:<16} N={} backend={}", self.name, self.bound, self.backend)?;
        if let Some(dev) = self.max_deviation {
            write!(f, " max_deviation={dev:.1e}")?;
        }
        if let Some(n) = self.first_failure {
            write!(f, " first_failure=n={n}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct IdentityReport {
    pub checks: Vec<IdentityCheck>,
}

impl IdentityReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

impl fmt::Display for IdentityReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            writeln!(f, "{c}")?;
        }
        Ok(())
    }
}

type Q = ExactRational;

fn q(v: i64) -> Q {
    Q::from_i64(v)
}

fn big_pow(p: usize, k: u32) -> Q {
    Q::from_integer(num_traits::pow(num_bigint::BigInt::from(p), k as usize))
}

/// Compares pairs of tables; the first difference across all pairs wins.
fn exact_check(name: &'static str, sieve: &SpfSieve, pairs: &[(ArithFn<Q>, ArithFn<Q>)]) -> Result<IdentityCheck> {
    let mut first_failure = None;
    for (lhs, rhs) in pairs {
        if let Some(n) = lhs.first_difference(rhs, 0.0)? {
            first_failure = Some(first_failure.map_or(n, |m: usize| m.min(n)));
        }
    }
    Ok(IdentityCheck {
        name,
        bound: sieve.bound(),
        backend: Backend::Rational,
        passed: first_failure.is_none(),
        first_failure,
        max_deviation: None,
    })
}

fn from_product(
    sieve: &SpfSieve,
    coeff: impl FnMut(usize, u32) -> Result<Q>,
) -> Result<ArithFn<Q>> {
    let d = BellDecomposition::from_coefficients(sieve, BellKind::Multiplicative, coeff)?;
    bell_reconstruct_mult(&d, sieve)
}

fn from_prime_support<C: Coeff>(
    sieve: &SpfSieve,
    mut value: impl FnMut(usize, u32) -> Result<C>,
) -> Result<PrimeSupport<C>> {
    let mut g = PrimeSupport::new(sieve.bound());
    for (p, k, _) in sieve.prime_powers() {
        g.insert(p, k, value(p, k)?);
    }
    Ok(g)
}

/// Checks the Euler-product closed forms of `u, mu, phi, lambda, Lambda, d,
/// N, sigma_c, nu, Omega` against their definitions.
///
/// Multiplicative functions are rebuilt from the per-prime expansion of the
/// closed form; `nu`, `Omega` from their prime-power parts; `Lambda` (float,
/// within `tol`) from its prime-power values together with
/// `u * Lambda = ln` and `Lambda = mu * u'`.
pub fn verify_identities(sieve: &SpfSieve, tol: f64) -> Result<IdentityReport> {
    let bound = sieve.bound();
    let def = |name: Named| make::<Q>(&name, sieve);
    let u = def(Named::Unit)?;
    let mut checks = Vec::new();

    // u = prod 1/(1 - x_i)
    checks.push(exact_check("u", sieve, &[(u.clone(), from_product(sieve, |_, _| Ok(q(1)))?)])?);

    // mu = prod (1 - x_i), and mu is the inverse of u
    let mu = def(Named::Mobius)?;
    let mu_rhs = from_product(sieve, |_, k| Ok(q([1, -1].get(k as usize).copied().unwrap_or(0))))?;
    let mu_inv = dirichlet_div(&ArithFn::identity(bound)?, &u)?;
    checks.push(exact_check("mu", sieve, &[(mu.clone(), mu_rhs), (mu.clone(), mu_inv)])?);

    // phi = prod (1 - x_i)/(1 - p_i x_i): 1, p^k - p^{k-1}
    let phi = def(Named::Phi)?;
    let phi_rhs = from_product(sieve, |p, k| {
        Ok(if k == 0 { q(1) } else { big_pow(p, k) - big_pow(p, k - 1) })
    })?;
    let phi_mobius = dirichlet_mul(&mu, &def(Named::IdN)?)?;
    checks.push(exact_check("phi", sieve, &[(phi.clone(), phi_rhs), (phi, phi_mobius)])?);

    // lambda = prod 1/(1 + x_i)
    let liouville_rhs = from_product(sieve, |_, k| Ok(q(if k % 2 == 0 { 1 } else { -1 })))?;
    checks.push(exact_check("lambda_liouville", sieve, &[(def(Named::Liouville)?, liouville_rhs)])?);

    checks.push(mangoldt_check(sieve, tol)?);

    // d = prod 1/(1 - x_i)^2 = u * u
    let d = def(Named::Divisors)?;
    let d_rhs = from_product(sieve, |_, k| Ok(q(k as i64 + 1)))?;
    checks.push(exact_check("d", sieve, &[(d.clone(), d_rhs), (d, dirichlet_mul(&u, &u)?)])?);

    // N = prod 1/(1 - p_i x_i)
    let id_rhs = from_product(sieve, |p, k| Ok(big_pow(p, k)))?;
    checks.push(exact_check("N", sieve, &[(def(Named::IdN)?, id_rhs)])?);

    // sigma_c = prod 1/((1 - x_i)(1 - p_i^c x_i)), for c = 0, 1, 2
    let mut sigma_pairs = Vec::new();
    for c in 0..=2u32 {
        let rhs = from_product(sieve, |p, k| {
            if c == 0 {
                return Ok(q(k as i64 + 1));
            }
            let num = big_pow(p, (k + 1) * c) - q(1);
            num.checked_div(&(big_pow(p, c) - q(1)))
        })?;
        sigma_pairs.push((def(Named::Sigma(q(c as i64)))?, rhs));
    }
    checks.push(exact_check("sigma_c", sieve, &sigma_pairs)?);

    // nu = u * sum x_i
    let nu_g = from_prime_support(sieve, |_, k| Ok(q(i64::from(k == 1))))?;
    checks.push(exact_check("nu", sieve, &[(def(Named::Nu)?, additive_reconstruct(&nu_g, sieve)?)])?);

    // Omega = u * sum x_i/(1 - x_i)
    let omega_g = from_prime_support(sieve, |_, _| Ok(q(1)))?;
    let omega_rhs = additive_reconstruct(&omega_g, sieve)?;
    checks.push(exact_check("Omega", sieve, &[(def(Named::BigOmega)?, omega_rhs)])?);

    Ok(IdentityReport { checks })
}

// Lambda = sum ln(p_i) x_i/(1 - x_i), i.e. ln p on every p^k.
fn mangoldt_check(sieve: &SpfSieve, tol: f64) -> Result<IdentityCheck> {
    type F = ComplexFloat;
    let bound = sieve.bound();
    let lambda = make::<F>(&Named::Mangoldt, sieve)?;
    let series = from_prime_support(sieve, |p, _| F::ln_of(p as u64))?.to_function(sieve)?;
    let u = ArithFn::constant(bound, F::one())?;
    let ln = ArithFn::try_from_fn(bound, |n| F::ln_of(n as u64))?;
    let mu = make::<F>(&Named::Mobius, sieve)?;
    let pairs = [
        (lambda.clone(), series),
        (dirichlet_mul(&u, &lambda)?, ln),
        (lambda, dirichlet_mul(&mu, &derivative(&u)?)?),
    ];
    let mut max_deviation: f64 = 0.0;
    let mut first_failure: Option<usize> = None;
    for (lhs, rhs) in &pairs {
        max_deviation = max_deviation.max(lhs.max_deviation(rhs)?.0);
        if let Some(n) = lhs.first_difference(rhs, tol)? {
            first_failure = Some(first_failure.map_or(n, |m| m.min(n)));
        }
    }
    Ok(IdentityCheck {
        name: "Lambda",
        bound,
        backend: Backend::Complex,
        passed: first_failure.is_none(),
        first_failure,
        max_deviation: Some(max_deviation),
    })
}
