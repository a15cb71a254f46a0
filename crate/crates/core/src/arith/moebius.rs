use crate::error::{domain, range_err, Error, Result};

/// Default upper bound for sieves built on behalf of callers that do not
/// configure one.
pub const DEFAULT_SIEVE_LIMIT: u64 = 10_000_000;

/// Values `μ(0), μ(1), ..., μ(N)` with the convention `μ(0) = 0`.
#[derive(Debug, Clone)]
pub struct MoebiusTable {
    values: Vec<i8>,
}

/// Linear sieve over smallest prime factors.
pub fn moebius_sieve(n: u64) -> Result<MoebiusTable> {
    if n == 0 {
        return Err(domain!("moebius_sieve needs N >= 1"));
    }
    let n = usize::try_from(n).map_err(|_| range_err!("sieve bound {n} does not fit in memory"))?;
    // 2 marks "not yet reached", which after the scan means prime.
    const UNSET: i8 = 2;
    let mut mu = vec![UNSET; n + 1];
    mu[0] = 0;
    mu[1] = 1;
    let mut primes: Vec<u32> = Vec::new();
    for i in 2..=n {
        if mu[i] == UNSET {
            mu[i] = -1;
            primes.push(i as u32);
        }
        for &p in &primes {
            let p = p as usize;
            let Some(ip) = i.checked_mul(p).filter(|&ip| ip <= n) else {
                break;
            };
            if i % p == 0 {
                mu[ip] = 0;
                break;
            }
            mu[ip] = -mu[i];
        }
    }
    Ok(MoebiusTable { values: mu })
}

/// [`moebius_sieve`] refusing bounds above `limit`.
pub fn moebius_sieve_within(n: u64, limit: u64) -> Result<MoebiusTable> {
    if n > limit {
        return Err(Error::Capacity(format!("sieve bound {n} exceeds the configured limit {limit}")));
    }
    moebius_sieve(n)
}

/// Number of squarefree integers in `[1, N]`.
pub fn squarefree_count(n: u64) -> Result<u64> {
    moebius_sieve(n)?.squarefree_count(n)
}

impl MoebiusTable {
    /// Largest `n` the table covers.
    pub fn bound(&self) -> u64 {
        (self.values.len() - 1) as u64
    }

    /// `μ(n)`; panics when `n` exceeds the bound.
    #[inline]
    pub fn mu(&self, n: u64) -> i8 {
        self.values[n as usize]
    }

    pub fn get(&self, n: u64) -> Result<i8> {
        self.values
            .get(n as usize)
            .copied()
            .ok_or_else(|| range_err!("μ({n}) requested from a table bounded by {}", self.bound()))
    }

    /// All values, indexed from 0.
    pub fn values(&self) -> &[i8] {
        &self.values
    }

    pub fn ensure_covers(&self, n: u64) -> Result<()> {
        if n > self.bound() {
            Err(range_err!("Möbius table covers [0, {}], need {n}", self.bound()))
        } else {
            Ok(())
        }
    }

    /// `Σ_{k ≤ n} μ(k)`.
    pub fn mertens(&self, n: u64) -> Result<i64> {
        self.ensure_covers(n)?;
        Ok(self.values[1..=n as usize].iter().map(|&m| m as i64).sum())
    }

    /// `Σ_{k ≤ n} μ(k)²`.
    pub fn squarefree_count(&self, n: u64) -> Result<u64> {
        if n == 0 {
            return Err(domain!("squarefree_count needs N >= 1"));
        }
        self.ensure_covers(n)?;
        Ok(self.values[1..=n as usize].iter().filter(|&&m| m != 0).count() as u64)
    }
}
