//! Smallest-prime-factor sieve and the factorization services built on it.
//!
//! The sieve identifies an index `n = p_1^a_1 ... p_k^a_k` with the monomial
//! `x_1^a_1 ... x_k^a_k`; `prime_index` gives the position `i` of `p_i`.

use crate::error::{Error, Result};

/// Largest accepted bound. The tables take 8 bytes per index.
pub const MAX_BOUND: usize = u32::MAX as usize;

/// Prime factorization as `(prime, exponent)` pairs with increasing primes.
pub type Factorization = Vec<(usize, u32)>;

#[derive(Debug, Clone)]
pub struct SpfSieve {
    bound: usize,
    spf: Vec<u32>,
    primes: Vec<usize>,
    // prime_index[p] = i + 1 for p = primes[i], 0 otherwise.
    prime_index: Vec<u32>,
}

impl SpfSieve {
    /// Linear sieve over `1..=bound`.
    pub fn new(bound: usize) -> Result<Self> {
        if bound == 0 || bound > MAX_BOUND {
            return Err(Error::InvalidBound(bound));
        }
        let mut spf = vec![0u32; bound + 1];
        let mut primes = Vec::new();
        for n in 2..=bound {
            if spf[n] == 0 {
                spf[n] = n as u32;
                primes.push(n);
            }
            let limit = spf[n] as usize;
            for &p in &primes {
                if p > limit || p * n > bound {
                    break;
                }
                spf[p * n] = p as u32;
            }
        }
        let mut prime_index = vec![0u32; bound + 1];
        for (i, &p) in primes.iter().enumerate() {
            prime_index[p] = i as u32 + 1;
        }
        Ok(SpfSieve {
            bound,
            spf,
            primes,
            prime_index,
        })
    }

    pub fn bound(&self) -> usize {
        self.bound
    }

    /// `p_1 = 2, p_2 = 3, ...` up to the bound.
    pub fn primes(&self) -> &[usize] {
        &self.primes
    }

    /// Smallest prime factor of `n`, for `2 <= n <= bound`.
    pub fn spf(&self, n: usize) -> Result<usize> {
        if n < 2 || n > self.bound {
            return Err(Error::OutOfRange { index: n, bound: self.bound });
        }
        Ok(self.spf[n] as usize)
    }

    pub fn is_prime(&self, n: usize) -> bool {
        n >= 2 && n <= self.bound && self.spf[n] as usize == n
    }

    /// One-based position `i` of `p = p_i`, or `None` if `p` is not a prime
    /// within the bound.
    pub fn prime_index(&self, p: usize) -> Option<usize> {
        match self.prime_index.get(p) {
            Some(&i) if i > 0 => Some(i as usize),
            _ => None,
        }
    }

    fn check(&self, n: usize) -> Result<()> {
        if n == 0 || n > self.bound {
            Err(Error::OutOfRange { index: n, bound: self.bound })
        } else {
            Ok(())
        }
    }

    pub fn factorize(&self, n: usize) -> Result<Factorization> {
        self.check(n)?;
        let mut out: Factorization = Vec::new();
        let mut m = n;
        while m > 1 {
            let p = self.spf[m] as usize;
            let mut k = 0;
            while m % p == 0 {
                m /= p;
                k += 1;
            }
            out.push((p, k));
        }
        Ok(out)
    }

    /// All divisors of `n` in ascending order.
    pub fn divisors(&self, n: usize) -> Result<Vec<usize>> {
        let factors = self.factorize(n)?;
        let count: usize = factors.iter().map(|&(_, k)| k as usize + 1).product();
        let mut out = Vec::with_capacity(count);
        // mixed-radix counter over the exponents
        let mut exps = vec![0u32; factors.len()];
        let mut d = 1usize;
        loop {
            out.push(d);
            let mut i = 0;
            loop {
                if i == factors.len() {
                    out.sort_unstable();
                    return Ok(out);
                }
                let (p, k) = factors[i];
                if exps[i] < k {
                    exps[i] += 1;
                    d *= p;
                    break;
                }
                d /= p.pow(exps[i]);
                exps[i] = 0;
                i += 1;
            }
        }
    }

    /// `(p, k)` with `n = p^k` when `n >= 2` is a prime power.
    pub fn prime_power_part(&self, n: usize) -> Result<Option<(usize, u32)>> {
        if n < 2 {
            return Err(Error::Range { index: n, range: "2..=N" });
        }
        let factors = self.factorize(n)?;
        Ok(match factors.as_slice() {
            [single] => Some(*single),
            _ => None,
        })
    }

    /// Number of distinct prime divisors.
    pub fn nu_count(&self, n: usize) -> Result<u32> {
        Ok(self.factorize(n)?.len() as u32)
    }

    /// Number of prime divisors counted with multiplicity.
    pub fn omega_count(&self, n: usize) -> Result<u32> {
        Ok(self.factorize(n)?.iter().map(|&(_, k)| k).sum())
    }

    /// Prime powers `p^k <= bound` as `(p, k, p^k)`, ordered by `(p, k)`.
    pub fn prime_powers(&self) -> impl Iterator<Item = (usize, u32, usize)> + '_ {
        let bound = self.bound;
        self.primes.iter().flat_map(move |&p| {
            std::iter::successors(Some((1u32, p)), move |&(k, q)| {
                q.checked_mul(p).filter(|&next| next <= bound).map(|next| (k + 1, next))
            })
            .map(move |(k, q)| (p, k, q))
        })
    }

    /// `floor(log_p bound)`: the largest `k` with `p^k <= bound`.
    pub fn max_exponent(&self, p: usize) -> u32 {
        let mut k = 0;
        let mut q = 1usize;
        while let Some(next) = q.checked_mul(p).filter(|&v| v <= self.bound) {
            q = next;
            k += 1;
        }
        k
    }
}
