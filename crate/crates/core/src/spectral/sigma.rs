use std::collections::HashMap;

use serde::Serialize;

use crate::arith::{odd_chain, ratio, v2, ExactRational};
use crate::error::{domain, Error, Result};

/// Memo table for the exact Fourier coefficients `σ̂(k)` of the Thue-Morse
/// spectral measure, defined by
///
/// ```text
/// σ̂(0) = 1,  σ̂(1) = -1/3,
/// σ̂(2n) = σ̂(n),  σ̂(2n+1) = -(σ̂(n) + σ̂(n+1)) / 2   for n ≥ 1.
/// ```
///
/// A cache is single-owner; threads that need coefficients concurrently keep
/// their own caches, which always agree.
#[derive(Debug, Clone, Default)]
pub struct SigmaCache {
    memo: HashMap<u64, ExactRational>,
}

impl SigmaCache {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.memo.len()
    }

    pub fn is_empty(&self) -> bool {
        self.memo.is_empty()
    }

    pub fn get(&mut self, k: u64) -> ExactRational {
        sigma_hat(k, self)
    }
}

/// `σ̂(k)`, memoized in `cache`.
pub fn sigma_hat(k: u64, cache: &mut SigmaCache) -> ExactRational {
    match k {
        0 => return ExactRational::one(),
        1 => return ratio(-1, 3),
        _ => {}
    }
    // Even arguments reduce to their odd part without allocating entries.
    let k = k >> k.trailing_zeros();
    if k == 1 {
        return ratio(-1, 3);
    }
    if let Some(v) = cache.memo.get(&k) {
        return v.clone();
    }
    let n = k / 2;
    let a = sigma_hat(n, cache);
    let b = sigma_hat(n + 1, cache);
    let v = -(a + b) / ratio(2, 1);
    cache.memo.insert(k, v.clone());
    v
}

/// `(-1/2)^a (σ̂(n+1) + σ̂(n)/3) - σ̂(n)/3`, the closed form for
/// `σ̂(2^a n + 1)` with `n, a ≥ 1`.
pub fn sigma_hat_closed(n: u64, a: u32, cache: &mut SigmaCache) -> Result<ExactRational> {
    if n == 0 || a == 0 {
        return Err(domain!("closed form needs n, a >= 1, got n={n}, a={a}"));
    }
    let third = ratio(1, 3);
    let s_n = sigma_hat(n, cache);
    let s_n1 = sigma_hat(n + 1, cache);
    let factor = ratio(-1, 2).powi(a as i32)?;
    Ok(&factor * &(&s_n1 + &(&third * &s_n)) - &third * &s_n)
}

/// The 2-adic picture of `σ̂(K)` for odd `K`: either `σ̂(K) = 0` or
/// `v2(σ̂(K)) ≥ 2 - l(K)`, with equality (and nonvanishing) once `K ≥ 9`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ValuationReport {
    #[serde(rename = "K")]
    pub k: u64,
    pub sigma: ExactRational,
    pub is_zero: bool,
    pub v2: Option<i64>,
    pub l: u32,
    pub lemma_holds: bool,
}

pub fn valuation_report(k: u64, cache: &mut SigmaCache) -> Result<ValuationReport> {
    if k % 2 == 0 {
        return Err(domain!("valuation_report needs odd K, got {k}"));
    }
    let chain = odd_chain(k)?;
    let sigma = sigma_hat(k, cache);
    let is_zero = sigma.is_zero();
    let v = if is_zero { None } else { Some(v2(&sigma)?) };
    let target = 2 - chain.l as i64;
    let lemma_holds = if k < 9 {
        is_zero || v.is_some_and(|v| v >= target)
    } else {
        v == Some(target)
    };
    Ok(ValuationReport { k, sigma, is_zero, v2: v, l: chain.l, lemma_holds })
}

/// `K ~ L` iff `σ̂(2K+1) = σ̂(2L+1)`.
pub fn tm_equivalent(k: u64, l: u64, cache: &mut SigmaCache) -> Result<bool> {
    let odd = |x: u64| x.checked_mul(2).and_then(|y| y.checked_add(1)).ok_or_else(|| domain!("2·{x}+1 overflows"));
    Ok(sigma_hat(odd(k)?, cache) == sigma_hat(odd(l)?, cache))
}

/// Default upper bound on `t` for [`disjointness_witness`].
pub const DEFAULT_WITNESS_BOUND: u64 = 1 << 16;

/// An odd `t` with `|σ̂(t r)| ≠ |σ̂(t s)|`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DisjointnessWitness {
    pub r: u64,
    pub s: u64,
    pub t: u64,
    pub c1: ExactRational,
    pub c2: ExactRational,
}

/// Smallest odd `t ≤ bound` separating `|σ̂(t r)|` from `|σ̂(t s)|`.
pub fn disjointness_witness(r: u64, s: u64, bound: u64, cache: &mut SigmaCache) -> Result<DisjointnessWitness> {
    if r % 2 == 0 || s % 2 == 0 {
        return Err(domain!("disjointness_witness needs odd r, s, got ({r}, {s})"));
    }
    if r == s {
        return Err(domain!("disjointness_witness needs r != s"));
    }
    let mut t = 1u64;
    while t <= bound {
        let (Some(tr), Some(ts)) = (t.checked_mul(r), t.checked_mul(s)) else {
            break;
        };
        let c1 = sigma_hat(tr, cache);
        let c2 = sigma_hat(ts, cache);
        if c1.abs() != c2.abs() {
            return Ok(DisjointnessWitness { r, s, t, c1, c2 });
        }
        t += 2;
    }
    Err(Error::SearchExhausted(format!(
        "no odd t <= {bound} with |σ̂(t·{r})| != |σ̂(t·{s})|"
    )))
}
