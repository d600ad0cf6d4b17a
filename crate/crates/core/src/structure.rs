//! Structure theory of multiplicative and additive functions.
//!
//! A multiplicative function is determined by its Bell series
//! `f_p(x) = sum_k a(p^k) x^k`, one per prime, and equals the product of
//! those series over all primes. An additive function `a` is `u * g` where
//! `g = mu * a` vanishes off prime powers; the per-prime pieces of `g` are
//! its [`PrimeSupport`]. Conversely every family of series with constant
//! term 1 (resp. every prime-supported `g`) gives a multiplicative (resp.
//! additive) function.

use std::collections::BTreeMap;

use num_integer::Integer;

use crate::dirichlet::{dirichlet_div, ArithFn};
use crate::error::{Error, Result, Witness};
use crate::numerics::{Coeff, DEFAULT_TOLERANCE};
use crate::sieve::SpfSieve;

/// Outcome of a structure predicate.
#[derive(Debug, Clone, PartialEq)]
pub enum Verdict<T = ()> {
    Holds(T),
    Fails(Witness),
}

impl<T> Verdict<T> {
    pub fn holds(&self) -> bool {
        matches!(self, Verdict::Holds(_))
    }

    pub fn witness(&self) -> Option<Witness> {
        match self {
            Verdict::Holds(_) => None,
            Verdict::Fails(w) => Some(*w),
        }
    }
}

// Float comparisons scale the tolerance with the size of the values.
fn agree<C: Coeff>(x: &C, y: &C, tol: f64) -> bool {
    x.close_to(y, tol * x.magnitude().max(y.magnitude()).max(1.0))
}

fn check_sieve<C>(a: &ArithFn<C>, sieve: &SpfSieve) -> Result<()>
where
    C: Coeff,
{
    if a.bound() != sieve.bound() {
        return Err(Error::BoundMismatch {
            left: a.bound(),
            right: sieve.bound(),
        });
    }
    Ok(())
}

/// Least coprime pair `(m, n)`, `2 <= m < n`, `mn <= N`, in lexicographic
/// order for which `holds(a(mn), a(m), a(n))` is false.
fn scan_coprime_pairs<C: Coeff>(
    a: &ArithFn<C>,
    holds: impl Fn(&C, &C, &C) -> bool,
) -> Option<Witness> {
    let bound = a.bound();
    let mut m = 2;
    while m * (m + 1) <= bound {
        for n in m + 1..=bound / m {
            if m.gcd(&n) == 1 && !holds(&a[m * n], &a[m], &a[n]) {
                return Some(Witness::Pair(m, n));
            }
        }
        m += 1;
    }
    None
}

/// `a(1) = 1` and `a(mn) = a(m) a(n)` for coprime `m, n` with `mn <= N`.
///
/// A failing coprime pair is reported in preference to a bad value at 1.
pub fn is_multiplicative<C: Coeff>(a: &ArithFn<C>, tol: f64) -> Verdict {
    if let Some(w) = scan_coprime_pairs(a, |amn, am, an| agree(amn, &am.mul_ref(an), tol)) {
        return Verdict::Fails(w);
    }
    if !agree(&a[1], &C::one(), tol) {
        return Verdict::Fails(Witness::AtOne);
    }
    Verdict::Holds(())
}

/// Multiplicative and `a(p^k) = a(p)^k`; on success reports `c_i = a(p_i)`
/// so that `a` has Bell series `1 / (1 - c_i x)` at `p_i`.
pub fn is_completely_multiplicative<C: Coeff>(
    a: &ArithFn<C>,
    sieve: &SpfSieve,
    tol: f64,
) -> Result<Verdict<Vec<(usize, C)>>> {
    check_sieve(a, sieve)?;
    if let Verdict::Fails(w) = is_multiplicative(a, tol) {
        return Ok(Verdict::Fails(w));
    }
    for (p, k, q) in sieve.prime_powers() {
        if k >= 2 && !agree(&a[q], &a[p].pow_u32(k), tol) {
            return Ok(Verdict::Fails(Witness::PrimePower { p, k }));
        }
    }
    Ok(Verdict::Holds(
        sieve.primes().iter().map(|&p| (p, a[p].clone())).collect(),
    ))
}

/// `a(1) = 0` and `a(mn) = a(m) + a(n)` for coprime `m, n` with `mn <= N`.
pub fn is_additive<C: Coeff>(a: &ArithFn<C>, tol: f64) -> Verdict {
    if let Some(w) = scan_coprime_pairs(a, |amn, am, an| agree(amn, &am.add_ref(an), tol)) {
        return Verdict::Fails(w);
    }
    if !agree(&a[1], &C::zero(), tol) {
        return Verdict::Fails(Witness::AtOne);
    }
    Verdict::Holds(())
}

/// Additive and `a(p^k) = k a(p)`; on success reports `c_i = a(p_i)`.
pub fn is_completely_additive<C: Coeff>(
    a: &ArithFn<C>,
    sieve: &SpfSieve,
    tol: f64,
) -> Result<Verdict<Vec<(usize, C)>>> {
    check_sieve(a, sieve)?;
    if let Verdict::Fails(w) = is_additive(a, tol) {
        return Ok(Verdict::Fails(w));
    }
    for (p, k, q) in sieve.prime_powers() {
        if k >= 2 && !agree(&a[q], &a[p].mul_ref(&C::from_i64(k as i64)), tol) {
            return Ok(Verdict::Fails(Witness::PrimePower { p, k }));
        }
    }
    Ok(Verdict::Holds(
        sieve.primes().iter().map(|&p| (p, a[p].clone())).collect(),
    ))
}

/// Additivity through Möbius inversion: `a` is additive exactly when
/// `g = mu * a` vanishes at 1 and at every `n` with two or more distinct
/// prime factors. The witness is the least such `n` with `g(n) != 0`.
pub fn mobius_additivity_test<C: Coeff>(
    a: &ArithFn<C>,
    sieve: &SpfSieve,
    tol: f64,
) -> Result<Verdict> {
    check_sieve(a, sieve)?;
    let u = ArithFn::constant(a.bound(), C::one())?;
    let g = dirichlet_div(a, &u)?;
    let scale = a.values().iter().map(Coeff::magnitude).fold(1.0, f64::max);
    let vanishes = |v: &C| v.is_negligible(tol * scale);
    if !vanishes(&g[1]) {
        return Ok(Verdict::Fails(Witness::Index(1)));
    }
    for n in 2..=a.bound() {
        if sieve.nu_count(n)? >= 2 && !vanishes(&g[n]) {
            return Ok(Verdict::Fails(Witness::Index(n)));
        }
    }
    Ok(Verdict::Holds(()))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BellKind {
    /// Constant terms 1; the function is the product of the series.
    Multiplicative,
    /// Constant terms 0; the function is `u` times the sum of the series.
    Additive,
}

/// Truncated power series `c_0 + c_1 x + ... + c_K x^K` attached to a prime.
#[derive(Debug, Clone, PartialEq)]
pub struct BellSeries<C> {
    pub prime: usize,
    pub coeffs: Vec<C>,
}

impl<C: Coeff> BellSeries<C> {
    pub fn new(prime: usize, coeffs: Vec<C>) -> Self {
        BellSeries { prime, coeffs }
    }

    /// Product truncated to the common length.
    pub fn mul_truncated(&self, other: &Self) -> Result<Self> {
        if self.prime != other.prime {
            return Err(Error::Invariant(format!(
                "Bell series for different primes {} and {}",
                self.prime, other.prime
            )));
        }
        let len = self.coeffs.len().min(other.coeffs.len());
        Ok(BellSeries::new(self.prime, series_mul(&self.coeffs, &other.coeffs, len)))
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "prime": self.prime,
            "coeffs": self.coeffs.iter().map(Coeff::to_json).collect::<Vec<_>>(),
        })
    }

    pub fn from_json(value: &serde_json::Value) -> Result<Self> {
        let bad = |m: &str| Error::Format { line: 0, message: m.to_string() };
        let prime = value["prime"].as_u64().ok_or_else(|| bad("missing `prime`"))? as usize;
        let coeffs = value["coeffs"]
            .as_array()
            .ok_or_else(|| bad("missing `coeffs`"))?
            .iter()
            .map(C::from_json)
            .collect::<Result<Vec<_>>>()?;
        Ok(BellSeries { prime, coeffs })
    }
}

/// One Bell series per prime `p <= N`, each of length `floor(log_p N) + 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct BellDecomposition<C> {
    pub bound: usize,
    pub kind: BellKind,
    pub series: Vec<BellSeries<C>>,
}

impl<C: Coeff> BellDecomposition<C> {
    /// Builds every series from a coefficient rule `(p, k) -> c_k`.
    pub fn from_coefficients(
        sieve: &SpfSieve,
        kind: BellKind,
        mut coeff: impl FnMut(usize, u32) -> Result<C>,
    ) -> Result<Self> {
        let series = sieve
            .primes()
            .iter()
            .map(|&p| {
                let coeffs = (0..=sieve.max_exponent(p))
                    .map(|k| coeff(p, k))
                    .collect::<Result<Vec<_>>>()?;
                Ok(BellSeries::new(p, coeffs))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(BellDecomposition {
            bound: sieve.bound(),
            kind,
            series,
        })
    }

    pub fn series_for(&self, p: usize) -> Option<&BellSeries<C>> {
        self.series
            .binary_search_by_key(&p, |s| s.prime)
            .ok()
            .map(|i| &self.series[i])
    }
}

/// Bell series `c_k = a(p^k)` of a multiplicative function.
pub fn bell_decompose_mult<C: Coeff>(
    a: &ArithFn<C>,
    sieve: &SpfSieve,
) -> Result<BellDecomposition<C>> {
    check_sieve(a, sieve)?;
    if let Verdict::Fails(witness) = is_multiplicative(a, DEFAULT_TOLERANCE) {
        return Err(Error::Structure {
            class: "multiplicative",
            witness,
        });
    }
    BellDecomposition::from_coefficients(sieve, BellKind::Multiplicative, |p, k| {
        Ok(a[p.pow(k)].clone())
    })
}

/// `a(p_1^m_1 ... p_r^m_r) = c_{1,m_1} ... c_{r,m_r}`.
pub fn bell_reconstruct_mult<C: Coeff>(
    d: &BellDecomposition<C>,
    sieve: &SpfSieve,
) -> Result<ArithFn<C>> {
    if d.kind != BellKind::Multiplicative {
        return Err(Error::Invariant("expected a multiplicative Bell decomposition".into()));
    }
    if d.bound != sieve.bound() {
        return Err(Error::BoundMismatch {
            left: d.bound,
            right: sieve.bound(),
        });
    }
    validate_series(d, sieve, C::one(), "1")?;
    ArithFn::try_from_fn(d.bound, |n| {
        let mut v = C::one();
        for (p, k) in sieve.factorize(n)? {
            let i = sieve.prime_index(p).expect("factor is a sieved prime") - 1;
            v *= &d.series[i].coeffs[k as usize];
        }
        Ok(v)
    })
}

fn validate_series<C: Coeff>(
    d: &BellDecomposition<C>,
    sieve: &SpfSieve,
    constant: C,
    constant_text: &str,
) -> Result<()> {
    if d.series.len() != sieve.primes().len() {
        return Err(Error::Invariant(format!(
            "expected {} Bell series, found {}",
            sieve.primes().len(),
            d.series.len()
        )));
    }
    for (s, &p) in d.series.iter().zip(sieve.primes()) {
        if s.prime != p {
            return Err(Error::Invariant(format!("expected the series for p={p}, found p={}", s.prime)));
        }
        let len = sieve.max_exponent(p) as usize + 1;
        if s.coeffs.len() != len {
            return Err(Error::Invariant(format!(
                "series at p={p} has {} coefficients, expected {len}",
                s.coeffs.len()
            )));
        }
        if !s.coeffs[0].close_to(&constant, 0.0) {
            return Err(Error::Invariant(format!(
                "constant term of the series at p={p} is {}, expected {constant_text}",
                s.coeffs[0]
            )));
        }
    }
    Ok(())
}

/// Values `g(p, k)` on prime powers `p^k <= N`; absent keys are zero.
#[derive(Debug, Clone, PartialEq)]
pub struct PrimeSupport<C> {
    bound: usize,
    entries: BTreeMap<(usize, u32), C>,
}

impl<C: Coeff> PrimeSupport<C> {
    pub fn new(bound: usize) -> Self {
        PrimeSupport {
            bound,
            entries: BTreeMap::new(),
        }
    }

    pub fn bound(&self) -> usize {
        self.bound
    }

    /// Sets `g(p, k)`; zero values are not stored.
    pub fn insert(&mut self, p: usize, k: u32, value: C) {
        if value.is_zero() {
            self.entries.remove(&(p, k));
        } else {
            self.entries.insert((p, k), value);
        }
    }

    pub fn get(&self, p: usize, k: u32) -> C {
        self.entries.get(&(p, k)).cloned().unwrap_or_else(C::zero)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Entries ordered by `(p, k)`.
    pub fn iter(&self) -> impl Iterator<Item = (usize, u32, &C)> {
        self.entries.iter().map(|(&(p, k), v)| (p, k, v))
    }

    /// Every key must be a prime power within the bound.
    pub fn validate(&self, sieve: &SpfSieve) -> Result<()> {
        if self.bound != sieve.bound() {
            return Err(Error::BoundMismatch {
                left: self.bound,
                right: sieve.bound(),
            });
        }
        for &(p, k) in self.entries.keys() {
            let in_range = k >= 1
                && sieve.is_prime(p)
                && p.checked_pow(k).is_some_and(|q| q <= self.bound);
            if !in_range {
                return Err(Error::Invariant(format!(
                    "key ({p}, {k}) is not a prime power <= {}",
                    self.bound
                )));
            }
        }
        Ok(())
    }

    /// `g` extended by zero to all of `1..=N`.
    pub fn to_function(&self, sieve: &SpfSieve) -> Result<ArithFn<C>> {
        self.validate(sieve)?;
        let mut values = vec![C::zero(); self.bound];
        for (p, k, v) in self.iter() {
            values[p.pow(k) - 1] = v.clone();
        }
        ArithFn::from_values(values)
    }

    /// Per-prime series `f_p(x) = sum_k g(p, k) x^k` with constant term 0.
    pub fn to_bell(&self, sieve: &SpfSieve) -> Result<BellDecomposition<C>> {
        self.validate(sieve)?;
        BellDecomposition::from_coefficients(sieve, BellKind::Additive, |p, k| {
            Ok(if k == 0 { C::zero() } else { self.get(p, k) })
        })
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::Value::Array(
            self.iter()
                .map(|(p, k, v)| serde_json::json!({"p": p, "k": k, "value": v.to_json()}))
                .collect(),
        )
    }
}

/// `g(p, k) = a(p^k) - a(p^{k-1})`, the prime-power part of `mu * a`.
pub fn additive_decompose<C: Coeff>(a: &ArithFn<C>, sieve: &SpfSieve) -> Result<PrimeSupport<C>> {
    check_sieve(a, sieve)?;
    if let Verdict::Fails(witness) = is_additive(a, DEFAULT_TOLERANCE) {
        return Err(Error::Structure {
            class: "additive",
            witness,
        });
    }
    let mut g = PrimeSupport::new(a.bound());
    for (p, k, q) in sieve.prime_powers() {
        g.insert(p, k, a[q].sub_ref(&a[q / p]));
    }
    Ok(g)
}

/// `a(n) = sum of g(p, k) over prime powers p^k dividing n`, i.e. `u * g`.
pub fn additive_reconstruct<C: Coeff>(g: &PrimeSupport<C>, sieve: &SpfSieve) -> Result<ArithFn<C>> {
    g.validate(sieve)?;
    let mut values = vec![C::zero(); g.bound];
    for (p, k, v) in g.iter() {
        let q = p.pow(k);
        for m in (q..=g.bound).step_by(q) {
            values[m - 1] += v;
        }
    }
    ArithFn::from_values(values)
}

/// Product of two power series truncated to `len` coefficients.
pub fn series_mul<C: Coeff>(a: &[C], b: &[C], len: usize) -> Vec<C> {
    let mut out = vec![C::zero(); len];
    for (i, x) in a.iter().enumerate().take(len) {
        for (j, y) in b.iter().enumerate().take(len - i) {
            out[i + j].add_product(x, y);
        }
    }
    out
}

/// `log f = sum_{k>=1} (-1)^{k-1} (f - 1)^k / k`, truncated to `f.len()`.
pub fn series_log<C: Coeff>(f: &[C]) -> Result<Vec<C>> {
    let len = f.len();
    if len == 0 {
        return Ok(Vec::new());
    }
    if !f[0].is_one() {
        return Err(Error::Domain {
            operation: "series log",
            expected: "constant term 1",
            found: f[0].to_string(),
        });
    }
    let mut b = f.to_vec();
    b[0] = C::zero();
    let mut out = vec![C::zero(); len];
    let mut power = b.clone();
    for k in 1..len {
        let sign = if k % 2 == 1 { 1 } else { -1 };
        let coef = C::from_ratio(sign, k as i64)?;
        for (o, p) in out.iter_mut().zip(&power) {
            o.add_product(&coef, p);
        }
        power = series_mul(&power, &b, len);
    }
    Ok(out)
}

/// `exp g = sum_{k>=0} g^k / k!`, truncated to `g.len()`.
pub fn series_exp<C: Coeff>(g: &[C]) -> Result<Vec<C>> {
    let len = g.len();
    if len == 0 {
        return Ok(Vec::new());
    }
    if !g[0].is_zero() {
        return Err(Error::Domain {
            operation: "series exp",
            expected: "constant term 0",
            found: g[0].to_string(),
        });
    }
    let mut out = vec![C::zero(); len];
    out[0] = C::one();
    let mut power = g.to_vec();
    let mut inv_factorial = C::one();
    for k in 1..len {
        inv_factorial *= &C::from_ratio(1, k as i64)?;
        for (o, p) in out.iter_mut().zip(&power) {
            o.add_product(&inv_factorial, p);
        }
        power = series_mul(&power, g, len);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::{rational, ExactRational};

    type Q = ExactRational;

    const EXACT: f64 = 0.0;

    fn q(v: i64) -> Q {
        Q::from_i64(v)
    }

    fn sieve(n: usize) -> SpfSieve {
        SpfSieve::new(n).unwrap()
    }

    fn from_sieve(s: &SpfSieve, f: impl Fn(&[(usize, u32)], usize) -> i64) -> ArithFn<Q> {
        ArithFn::from_fn(s.bound(), |n| q(f(&s.factorize(n).unwrap(), n))).unwrap()
    }

    fn phi(s: &SpfSieve) -> ArithFn<Q> {
        from_sieve(s, |fs, n| {
            fs.iter().fold(n as i64, |acc, &(p, _)| acc / p as i64 * (p as i64 - 1))
        })
    }

    fn nu(s: &SpfSieve) -> ArithFn<Q> {
        from_sieve(s, |fs, _| fs.len() as i64)
    }

    fn big_omega(s: &SpfSieve) -> ArithFn<Q> {
        from_sieve(s, |fs, _| fs.iter().map(|&(_, k)| k as i64).sum())
    }

    #[test]
    fn multiplicative_examples() {
        let s = sieve(200);
        assert!(is_multiplicative(&phi(&s), EXACT).holds());
        assert_eq!(is_multiplicative(&nu(&s), EXACT), Verdict::Fails(Witness::Pair(2, 3)));
        let zero = ArithFn::<Q>::zero(200).unwrap();
        assert_eq!(is_multiplicative(&zero, EXACT), Verdict::Fails(Witness::AtOne));
        assert!(is_multiplicative(&ArithFn::<Q>::identity(200).unwrap(), EXACT).holds());
    }

    #[test]
    fn completely_multiplicative_examples() {
        let s = sieve(100);
        let liouville = from_sieve(&s, |fs, _| {
            if fs.iter().map(|&(_, k)| k).sum::<u32>() % 2 == 0 { 1 } else { -1 }
        });
        match is_completely_multiplicative(&liouville, &s, EXACT).unwrap() {
            Verdict::Holds(c) => assert!(c.iter().all(|(_, v)| *v == q(-1))),
            other => panic!("{other:?}"),
        }
        let id_n = ArithFn::from_fn(100, |n| q(n as i64)).unwrap();
        match is_completely_multiplicative(&id_n, &s, EXACT).unwrap() {
            Verdict::Holds(c) => assert!(c.iter().all(|(p, v)| *v == q(*p as i64))),
            other => panic!("{other:?}"),
        }
        assert_eq!(
            is_completely_multiplicative(&phi(&s), &s, EXACT).unwrap(),
            Verdict::Fails(Witness::PrimePower { p: 2, k: 2 })
        );
    }

    #[test]
    fn additive_examples() {
        let s = sieve(300);
        assert!(is_additive(&nu(&s), EXACT).holds());
        assert!(is_additive(&big_omega(&s), EXACT).holds());
        let p = phi(&s).with_value_at_one(Q::zero());
        assert_eq!(is_additive(&p, EXACT), Verdict::Fails(Witness::Pair(2, 3)));
        assert_eq!(is_additive(&phi(&s), EXACT), Verdict::Fails(Witness::Pair(2, 3)));
        let one_at_one = ArithFn::<Q>::identity(300).unwrap();
        assert_eq!(is_additive(&one_at_one, EXACT), Verdict::Fails(Witness::AtOne));
    }

    #[test]
    fn completely_additive_examples() {
        let s = sieve(300);
        match is_completely_additive(&big_omega(&s), &s, EXACT).unwrap() {
            Verdict::Holds(c) => assert!(c.iter().all(|(_, v)| *v == q(1))),
            other => panic!("{other:?}"),
        }
        assert_eq!(
            is_completely_additive(&nu(&s), &s, EXACT).unwrap(),
            Verdict::Fails(Witness::PrimePower { p: 2, k: 2 })
        );
        match is_completely_additive(&ArithFn::<Q>::zero(300).unwrap(), &s, EXACT).unwrap() {
            Verdict::Holds(c) => assert!(c.iter().all(|(_, v)| v.is_zero())),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn mobius_test_examples() {
        let s = sieve(400);
        assert!(mobius_additivity_test(&nu(&s), &s, EXACT).unwrap().holds());
        assert!(mobius_additivity_test(&big_omega(&s), &s, EXACT).unwrap().holds());
        let u = ArithFn::constant(400, Q::one()).unwrap();
        assert_eq!(
            mobius_additivity_test(&u, &s, EXACT).unwrap(),
            Verdict::Fails(Witness::Index(1))
        );
        let p = phi(&s).with_value_at_one(Q::zero());
        assert_eq!(
            mobius_additivity_test(&p, &s, EXACT).unwrap(),
            Verdict::Fails(Witness::Index(6))
        );
    }

    #[test]
    fn bell_examples() {
        let s = sieve(500);
        let u = ArithFn::constant(500, Q::one()).unwrap();
        let d = bell_decompose_mult(&u, &s).unwrap();
        assert!(d.series.iter().all(|b| b.coeffs.iter().all(|c| c.is_one())));
        assert_eq!(d.series_for(2).unwrap().coeffs.len(), 9);
        assert_eq!(d.series_for(23).unwrap().coeffs.len(), 2);
        assert_eq!(bell_reconstruct_mult(&d, &s).unwrap(), u);

        let ph = phi(&s);
        let d = bell_decompose_mult(&ph, &s).unwrap();
        assert_eq!(d.series_for(3).unwrap().coeffs, vec![q(1), q(2), q(6), q(18), q(54), q(162)]);
        assert_eq!(bell_reconstruct_mult(&d, &s).unwrap(), ph);

        assert!(matches!(
            bell_decompose_mult(&nu(&s), &s),
            Err(Error::Structure { witness: Witness::Pair(2, 3), .. })
        ));
    }

    #[test]
    fn reconstruct_from_rule() {
        let s = sieve(50);
        let d = BellDecomposition::from_coefficients(&s, BellKind::Multiplicative, |p, k| {
            Ok(match k {
                0 => q(1),
                1 => q(p as i64),
                _ => q(0),
            })
        })
        .unwrap();
        let a = bell_reconstruct_mult(&d, &s).unwrap();
        assert_eq!(a[6], q(6));
        assert_eq!(a[4], q(0));
        assert_eq!(a[1], q(1));
    }

    #[test]
    fn reconstruct_rejects_bad_constant_term() {
        let s = sieve(30);
        let mut d = BellDecomposition::from_coefficients(&s, BellKind::Multiplicative, |_, _| Ok(q(1)))
            .unwrap();
        d.series[2].coeffs[0] = q(2);
        match bell_reconstruct_mult(&d, &s) {
            Err(Error::Invariant(m)) => assert!(m.contains("p=5"), "{m}"),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn additive_round_trips() {
        let s = sieve(600);
        let g = additive_decompose(&nu(&s), &s).unwrap();
        assert_eq!(g.get(2, 1), q(1));
        assert_eq!(g.get(2, 3), q(0));
        assert_eq!(additive_reconstruct(&g, &s).unwrap(), nu(&s));

        let g = additive_decompose(&big_omega(&s), &s).unwrap();
        assert!(g.iter().all(|(_, _, v)| *v == q(1)));
        assert_eq!(g.len(), s.prime_powers().count());
        assert_eq!(additive_reconstruct(&g, &s).unwrap(), big_omega(&s));

        let zero = ArithFn::<Q>::zero(600).unwrap();
        assert!(additive_decompose(&zero, &s).unwrap().is_empty());
        assert_eq!(additive_reconstruct(&PrimeSupport::new(600), &s).unwrap(), zero);
    }

    #[test]
    fn decompose_agrees_with_mobius_inversion() {
        let s = sieve(500);
        let a = big_omega(&s);
        let g = additive_decompose(&a, &s).unwrap();
        let u = ArithFn::constant(500, Q::one()).unwrap();
        assert_eq!(g.to_function(&s).unwrap(), dirichlet_div(&a, &u).unwrap());
    }

    #[test]
    fn prime_support_keys_are_validated() {
        let s = sieve(30);
        let mut g = PrimeSupport::new(30);
        g.insert(6, 1, q(1));
        assert!(matches!(additive_reconstruct(&g, &s), Err(Error::Invariant(_))));
        let mut g = PrimeSupport::new(30);
        g.insert(2, 5, q(1));
        assert!(additive_reconstruct(&g, &s).is_err());
    }

    #[test]
    fn series_log_exp() {
        // log(1/(1-x)) = sum x^k / k
        let geometric = vec![q(1); 7];
        let l = series_log(&geometric).unwrap();
        let expected: Vec<Q> = (0..7)
            .map(|k| if k == 0 { q(0) } else { rational(1, k).unwrap() })
            .collect();
        assert_eq!(l, expected);
        assert_eq!(series_exp(&l).unwrap(), geometric);
        assert!(series_log(&[q(0), q(1)]).is_err());
        assert!(series_exp(&[q(1), q(1)]).is_err());
    }

    #[test]
    fn json_shapes() {
        let b = BellSeries::new(2, vec![q(1), q(-1), rational(1, 2).unwrap()]);
        assert_eq!(b.to_json(), serde_json::json!({"prime": 2, "coeffs": ["1", "-1", "1/2"]}));
        assert_eq!(BellSeries::<Q>::from_json(&b.to_json()).unwrap(), b);
        let mut g = PrimeSupport::new(10);
        g.insert(3, 1, q(2));
        g.insert(2, 2, q(-1));
        assert_eq!(
            g.to_json(),
            serde_json::json!([{"p": 2, "k": 2, "value": "-1"}, {"p": 3, "k": 1, "value": "2"}])
        );
    }
}
