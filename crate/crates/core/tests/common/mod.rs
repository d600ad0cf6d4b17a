#![allow(dead_code)]

use std::collections::HashMap;

use arithfn::numerics::rational;
use arithfn::{ArithFn, Coeff, ComplexFloat, ExactRational, SpfSieve};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub type Q = ExactRational;
pub type F = ComplexFloat;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn small_rational(rng: &mut impl Rng) -> Q {
    rational(rng.gen_range(-4..=4), rng.gen_range(1..=3)).unwrap()
}

pub fn nonzero_rational(rng: &mut impl Rng) -> Q {
    loop {
        let q = small_rational(rng);
        if !q.is_zero() {
            return q;
        }
    }
}

/// Random dense function with the given value at 1.
pub fn random_fn(rng: &mut impl Rng, bound: usize, at_one: Q) -> ArithFn<Q> {
    ArithFn::from_fn(bound, |n| if n == 1 { at_one.clone() } else { small_rational(rng) }).unwrap()
}

pub fn random_float_fn(rng: &mut impl Rng, bound: usize, at_one: f64) -> ArithFn<F> {
    ArithFn::from_fn(bound, |n| {
        let v = if n == 1 { at_one } else { rng.gen_range(-0.5..0.5) };
        F::real(v).unwrap()
    })
    .unwrap()
}

/// Prime factorisation by trial division.
pub fn trial_factor(mut n: usize) -> Vec<(usize, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            let mut k = 0;
            while n % p == 0 {
                n /= p;
                k += 1;
            }
            out.push((p, k));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// Values on prime powers drawn at random, extended multiplicatively.
pub fn random_multiplicative(rng: &mut impl Rng, sieve: &SpfSieve) -> ArithFn<Q> {
    let mut table: HashMap<(usize, u32), Q> = HashMap::new();
    for (p, k, _) in sieve.prime_powers() {
        table.insert((p, k), small_rational(rng));
    }
    ArithFn::from_fn(sieve.bound(), |n| {
        let mut v = Q::one();
        for (p, k) in trial_factor(n) {
            v *= &table[&(p, k)];
        }
        v
    })
    .unwrap()
}

/// Values on prime powers drawn at random, extended additively.
pub fn random_additive(rng: &mut impl Rng, sieve: &SpfSieve) -> ArithFn<Q> {
    let mut table: HashMap<(usize, u32), Q> = HashMap::new();
    for (p, k, _) in sieve.prime_powers() {
        table.insert((p, k), small_rational(rng));
    }
    ArithFn::from_fn(sieve.bound(), |n| {
        let mut v = Q::zero();
        for (p, k) in trial_factor(n) {
            v += &table[&(p, k)];
        }
        v
    })
    .unwrap()
}

pub fn mobius_by_definition(n: usize) -> i64 {
    let f = trial_factor(n);
    if f.iter().any(|&(_, k)| k > 1) {
        0
    } else if f.len() % 2 == 0 {
        1
    } else {
        -1
    }
}

/// `|x - y| <= tol * max(1, |x|, |y|)`.
pub fn close(x: &F, y: &F, tol: f64) -> bool {
    (x.re() - y.re()).hypot(x.im() - y.im()) <= tol * 1f64.max(x.norm()).max(y.norm())
}

/// First index where two float functions disagree under [`close`].
pub fn first_mismatch(a: &ArithFn<F>, b: &ArithFn<F>, tol: f64) -> Option<usize> {
    (1..=a.bound()).find(|&n| !close(&a[n], &b[n], tol))
}
