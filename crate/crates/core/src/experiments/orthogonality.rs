use std::collections::HashMap;

use serde::Serialize;

use super::cylinder::{CylinderFunction, CylinderValue};
use crate::arith::{ExactRational, MoebiusTable};
use crate::error::{domain, Result};
use crate::report::{fmt_f64, Tabular};
use crate::sequences::{thue_morse_bit, BitSequence};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Checkpoint<V> {
    #[serde(rename = "N")]
    pub n: u64,
    /// `S_N`.
    pub value: V,
    #[serde(serialize_with = "crate::report::ser_f64")]
    pub abs: f64,
}

/// `S_N = (1/N) Σ_{k=1}^{N} f(T^k w) μ(k)` at increasing `N`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OrthogonalitySeries<V> {
    pub checkpoints: Vec<Checkpoint<V>>,
}

impl<V: CylinderValue> OrthogonalitySeries<V> {
    pub fn last(&self) -> Option<&Checkpoint<V>> {
        self.checkpoints.last()
    }
}

impl Tabular for Checkpoint<ExactRational> {
    fn header() -> Vec<&'static str> {
        vec!["N", "value", "abs"]
    }
    fn row(&self) -> Vec<String> {
        vec![self.n.to_string(), self.value.to_string(), fmt_f64(self.abs)]
    }
}

/// `10, 100, ...` up to `N`, then `N` itself.
pub fn default_checkpoints(n: u64) -> Vec<u64> {
    let mut out: Vec<u64> = std::iter::successors(Some(10u64), |&p| p.checked_mul(10))
        .take_while(|&p| p <= n)
        .collect();
    if out.last() != Some(&n) && n >= 1 {
        out.push(n);
    }
    out
}

/// One pass over `k ≤ max(checkpoints)`, snapshotting `S_N` at each
/// checkpoint. Checkpoints must be increasing and positive.
pub fn orthogonality_series<V: CylinderValue, S: BitSequence + ?Sized>(
    f: &CylinderFunction<V>,
    w: &S,
    mu: &MoebiusTable,
    checkpoints: &[u64],
) -> Result<OrthogonalitySeries<V>> {
    if checkpoints.is_empty() || checkpoints[0] == 0 || checkpoints.windows(2).any(|p| p[1] <= p[0]) {
        return Err(domain!("checkpoints must be positive and strictly increasing"));
    }
    mu.ensure_covers(*checkpoints.last().unwrap())?;
    let mut counts: HashMap<usize, i64> = HashMap::new();
    let mut out = Vec::with_capacity(checkpoints.len());
    let mut k = 0u64;
    for &n in checkpoints {
        while k < n {
            k += 1;
            let word = f.word_at(w, k)?;
            *counts.entry(word).or_default() += mu.mu(k) as i64;
        }
        let value = f.combine(&counts).div_n(n);
        let abs = value.magnitude();
        out.push(Checkpoint { n, value, abs });
    }
    Ok(OrthogonalitySeries { checkpoints: out })
}

/// `(-1)^{w(0)}` as a cylinder function.
pub fn sign_function() -> CylinderFunction<ExactRational> {
    CylinderFunction::new(0, 1, vec![ExactRational::one(), -ExactRational::one()]).expect("valid table")
}

/// `(1/N) Σ_{n=1}^{N} (-1)^{x(n)} μ(n)` for Thue-Morse `x`.
pub fn tm_orthogonality(n: u64, mu: &MoebiusTable) -> Result<ExactRational> {
    if n == 0 {
        return Err(domain!("tm_orthogonality needs N >= 1"));
    }
    mu.ensure_covers(n)?;
    let sum: i64 = (1..=n).map(|k| mu.mu(k) as i64 * (1 - 2 * thue_morse_bit(k) as i64)).sum();
    ExactRational::new(sum, n)
}

/// `(1/N) Σ_{k=1}^{N} b_k μ(k)` for `b = pre, then period repeated`.
pub fn eventually_periodic_sum(pre: &[i64], period: &[i64], mu: &MoebiusTable, n: u64) -> Result<ExactRational> {
    if period.is_empty() {
        return Err(domain!("period must be nonempty"));
    }
    if n == 0 {
        return Err(domain!("eventually_periodic_sum needs N >= 1"));
    }
    mu.ensure_covers(n)?;
    let p = period.len() as u64;
    let q = pre.len() as u64;
    let mut sum = 0i128;
    for k in 1..=n {
        let i = k - 1;
        let b = if i < q { pre[i as usize] } else { period[((i - q) % p) as usize] };
        sum += b as i128 * mu.mu(k) as i128;
    }
    ExactRational::new(num_bigint::BigInt::from(sum), n)
}
