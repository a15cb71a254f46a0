use rayon::prelude::*;
use serde::Serialize;

use super::sigma::{sigma_hat, SigmaCache};
use crate::arith::ExactRational;
use crate::error::{domain, range_err, Result};
use crate::report::round_sig;
use crate::sequences::{BitSequence, MorseSpec, RunLength, ThueMorse};

const CHUNK: u64 = 1 << 16;

/// `(1/N) Σ_{n=1}^{N} m_{n+k} m_n` for `m_n = (-1)^{w(n)}`, with an optional
/// exact target.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CorrelationReport {
    pub k: u64,
    #[serde(rename = "N")]
    pub n: u64,
    pub empirical: ExactRational,
    pub exact: Option<ExactRational>,
    #[serde(serialize_with = "crate::report::ser_opt_f64")]
    pub deviation: Option<f64>,
}

impl CorrelationReport {
    pub fn with_exact(mut self, exact: ExactRational) -> Self {
        self.deviation = Some(round_sig((&self.empirical - &exact).abs().to_f64(), 12));
        self.exact = Some(exact);
        self
    }
}

/// Agreements minus disagreements of `w(n+k)` and `w(n)` over `n ∈ [1, N]`.
pub fn correlation_sum<S: BitSequence + ?Sized>(seq: &S, k: u64, n: u64) -> Result<i64> {
    n.checked_add(k).ok_or_else(|| range_err!("N + k overflows"))?;
    let chunks: Vec<(u64, u64)> = (0..n.div_ceil(CHUNK))
        .map(|c| (1 + c * CHUNK, (1 + (c + 1) * CHUNK).min(n + 1)))
        .collect();
    let partials: Vec<Option<i64>> = chunks
        .par_iter()
        .map(|&(lo, hi)| {
            let mut acc = 0i64;
            for i in lo..hi {
                let a = seq.bit(i)?;
                let b = seq.bit(i + k)?;
                acc += if a == b { 1 } else { -1 };
            }
            Some(acc)
        })
        .collect();
    partials
        .into_iter()
        .sum::<Option<i64>>()
        .ok_or_else(|| range_err!("sequence undefined somewhere on [1, {}]", n + k))
}

pub fn empirical_correlation<S: BitSequence + ?Sized>(seq: &S, k: u64, n: u64) -> Result<CorrelationReport> {
    if n == 0 {
        return Err(domain!("correlation needs N >= 1"));
    }
    let sum = correlation_sum(seq, k, n)?;
    let empirical = ExactRational::new(sum, n as i64)?;
    Ok(CorrelationReport { k, n, empirical, exact: None, deviation: None })
}

/// Empirical Thue-Morse correlation at shift `k` paired with `σ̂(k)`.
pub fn tm_correlation(k: u64, n: u64, cache: &mut SigmaCache) -> Result<CorrelationReport> {
    Ok(empirical_correlation(&ThueMorse, k, n)?.with_exact(sigma_hat(k, cache)))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StabilizationPoint {
    pub level: u64,
    /// `q_k`.
    pub scale: u64,
    /// Consecutive `01` blocks starting at this level; `None` if unbounded.
    pub run_length: Option<u64>,
    /// `s / 2^K`, the distance the limit may keep from `|σ̂(s)|`.
    #[serde(serialize_with = "crate::report::ser_f64")]
    pub envelope: f64,
    /// Correlation at shift `s·q_k`, reported in absolute value against
    /// `|σ̂(s)|`.
    pub report: CorrelationReport,
}

/// For each level `k`, `|η̂(s q_k)|` estimated on `N` terms of the sequence
/// given by `spec`, against the Thue-Morse target `|σ̂(s)|`.
pub fn stabilization_check(
    spec: &MorseSpec,
    s: u64,
    levels: &[u64],
    n: u64,
    cache: &mut SigmaCache,
) -> Result<Vec<StabilizationPoint>> {
    if !spec.is_tm_type() {
        return Err(crate::error::Error::Unsupported(format!(
            "spec {spec} does not declare a stabilizing Thue-Morse subsequence"
        )));
    }
    if s % 2 == 0 {
        return Err(domain!("stabilization_check needs odd s, got {s}"));
    }
    let target = sigma_hat(s, cache).abs();
    let seq = spec.sequence();
    levels
        .iter()
        .map(|&level| {
            let scale = spec.scale(level)?;
            let shift = scale.checked_mul(s).ok_or_else(|| range_err!("s·q_{level} overflows"))?;
            n.checked_add(shift).ok_or_else(|| range_err!("level {level} exceeds the representable horizon"))?;
            let raw = empirical_correlation(&seq, shift, n)?;
            let report = CorrelationReport { empirical: raw.empirical.abs(), ..raw }.with_exact(target.clone());
            let run_length = match spec.run_length_at(level) {
                RunLength::Finite(k) => Some(k),
                RunLength::Unbounded => None,
            };
            let envelope = match run_length {
                Some(k) => s as f64 / 2f64.powi(k.min(1000) as i32),
                None => 0.0,
            };
            Ok(StabilizationPoint { level, scale, run_length, envelope, report })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::ratio;
    use crate::sequences::{thue_morse_bit, ThueToeplitz};

    #[test]
    fn zero_shift_is_one() {
        for n in [1, 7, 1000] {
            assert_eq!(empirical_correlation(&ThueMorse, 0, n).unwrap().empirical, ExactRational::one());
        }
    }

    #[test]
    fn matches_sequential_count() {
        let n = 200_000u64;
        for k in [1, 3, 17, 64] {
            let direct: i64 = (1..=n)
                .map(|i| if thue_morse_bit(i) == thue_morse_bit(i + k) { 1 } else { -1 })
                .sum();
            assert_eq!(correlation_sum(&ThueMorse, k, n).unwrap(), direct);
        }
    }

    #[test]
    fn shift_one_near_minus_third() {
        let mut c = SigmaCache::new();
        let r = tm_correlation(1, 1 << 20, &mut c).unwrap();
        assert_eq!(r.exact, Some(ratio(-1, 3)));
        assert!(r.deviation.unwrap() < 0.01);
        let scaled = tm_correlation(1 << 10, 1 << 20, &mut c).unwrap();
        assert_eq!(scaled.exact, r.exact);
    }

    #[test]
    fn finite_sequences_report_range_errors() {
        let b: crate::sequences::Block = "0110".parse().unwrap();
        assert!(empirical_correlation(&b, 1, 2).is_ok());
        assert!(empirical_correlation(&b, 1, 3).is_err());
        assert!(empirical_correlation(&ThueToeplitz, 1, 0).is_err());
    }

    #[test]
    fn stabilization_on_pure_thue_morse_collapses_the_scale() {
        let mut c = SigmaCache::new();
        let tm = MorseSpec::thue_morse();
        let pts = stabilization_check(&tm, 3, &[0, 2, 4], 1 << 16, &mut c).unwrap();
        for p in &pts {
            let direct = empirical_correlation(&ThueMorse, 3 << p.level, 1 << 16).unwrap();
            assert_eq!(p.report.empirical, direct.empirical.abs());
            assert_eq!(p.report.exact, Some(ratio(1, 3)));
            assert_eq!(p.run_length, None);
        }
        let sub: MorseSpec = "011*".parse().unwrap();
        assert!(stabilization_check(&sub, 1, &[1], 100, &mut c).is_err());
        assert!(stabilization_check(&tm, 2, &[1], 100, &mut c).is_err());
    }
}
