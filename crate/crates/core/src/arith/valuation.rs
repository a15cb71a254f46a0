use serde::Serialize;

use super::rational::ExactRational;
use crate::error::{domain, Result};

/// 2-adic valuation of a nonzero rational: the exponent `k - l` in
/// `w = 2^k p / (2^l q)` with `p, q` odd.
pub fn v2(w: &ExactRational) -> Result<i64> {
    if w.is_zero() {
        return Err(domain!("v2 is undefined at 0"));
    }
    // Reduced form: at most one of numerator and denominator is even.
    let num = w.numer().trailing_zeros().unwrap_or(0) as i64;
    let den = w.denom().trailing_zeros().unwrap_or(0) as i64;
    Ok(num - den)
}

/// The decomposition `K = K_0, K_1, ..., K_r = 1` of an odd number with
/// `K_{i-1} = 2^{a_i} K_i + 1`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OddChain {
    pub k: u64,
    /// `K_0, ..., K_r`.
    pub ks: Vec<u64>,
    /// `a_1, ..., a_r`.
    pub exps: Vec<u32>,
    /// `a_1 + ... + a_r`, which equals `floor(log2 K)`.
    pub l: u32,
    pub r: usize,
}

pub fn odd_chain(k: u64) -> Result<OddChain> {
    if k == 0 || k % 2 == 0 {
        return Err(domain!("odd_chain needs an odd K >= 1, got {k}"));
    }
    let mut ks = vec![k];
    let mut exps = Vec::new();
    let mut cur = k;
    while cur != 1 {
        let m = cur - 1;
        let a = m.trailing_zeros();
        cur = m >> a;
        exps.push(a);
        ks.push(cur);
    }
    let l = exps.iter().sum();
    let r = exps.len();
    Ok(OddChain { k, ks, exps, l, r })
}

/// Smallest odd `t` with `r*t < 2^a < s*t`, or `None` when the window
/// `(2^a/s, 2^a/r)` holds no odd integer.
pub fn find_odd_t(r: u64, s: u64, a: u32) -> Result<Option<u64>> {
    if r % 2 == 0 || s % 2 == 0 {
        return Err(domain!("find_odd_t needs odd r and s, got ({r}, {s})"));
    }
    if r >= s {
        return Err(domain!("find_odd_t needs r < s, got ({r}, {s})"));
    }
    if a == 0 || a > 100 {
        return Err(domain!("find_odd_t needs 1 <= a <= 100, got {a}"));
    }
    let (r, s) = (r as u128, s as u128);
    let target = 1u128 << a;
    // Smallest t with s*t > 2^a.
    let mut t = target / s + 1;
    if t % 2 == 0 {
        t += 1;
    }
    if r * t < target {
        Ok(u64::try_from(t).ok())
    } else {
        Ok(None)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rational::ratio;
    use proptest::prelude::*;

    /// Independent oracle: strip factors of two by repeated halving/doubling.
    fn v2_by_halving(mut w: ExactRational) -> i64 {
        let two = ExactRational::from(2);
        let mut k = 0;
        while !w.numer().bit(0) {
            w = &w / &two;
            k += 1;
        }
        while !w.denom().bit(0) {
            w = &w * &two;
            k -= 1;
        }
        k
    }

    #[test]
    fn v2_examples() {
        assert_eq!(v2(&ratio(8, 1)).unwrap(), 3);
        assert_eq!(v2(&ratio(-1, 6)).unwrap(), -1);
        assert_eq!(v2(&ratio(12, 40)).unwrap(), -1);
        assert_eq!(v2_by_halving(ratio(12, 40)), -1);
        assert_eq!(v2_by_halving(ratio(-1, 6)), -1);
        assert_eq!(v2_by_halving(ratio(8, 1)), 3);
        assert!(v2(&ExactRational::zero()).is_err());
    }

    #[test]
    fn odd_chain_examples() {
        let c = odd_chain(1).unwrap();
        assert_eq!((c.r, c.l, c.ks.clone(), c.exps.is_empty()), (0, 0, vec![1], true));
        let c = odd_chain(9).unwrap();
        assert_eq!((c.ks, c.exps, c.l), (vec![9, 1], vec![3], 3));
        let c = odd_chain(13).unwrap();
        assert_eq!((c.ks, c.exps, c.l), (vec![13, 3, 1], vec![2, 1], 3));
        assert!(odd_chain(0).is_err());
        assert!(odd_chain(4).is_err());
    }

    #[test]
    fn odd_chain_log_identity() {
        for k in (1u64..(1 << 14)).step_by(2) {
            let c = odd_chain(k).unwrap();
            assert_eq!(c.l, 63 - k.leading_zeros());
            assert!(1u64 << c.l <= k && k < 1u64 << (c.l + 1));
            for (i, &a) in c.exps.iter().enumerate() {
                assert!(a >= 1);
                assert_eq!(c.ks[i], (c.ks[i + 1] << a) + 1);
            }
        }
    }

    fn brute_odd_t(r: u64, s: u64, a: u32) -> Option<u64> {
        let target = 1u64 << a;
        (1..target.max(2)).step_by(2).find(|&t| r * t < target && target < s * t)
    }

    #[test]
    fn find_odd_t_examples() {
        assert_eq!(find_odd_t(1, 3, 2).unwrap(), Some(3));
        assert_eq!(find_odd_t(3, 5, 4).unwrap(), Some(5));
        assert_eq!(find_odd_t(5, 7, 3).unwrap(), None);
        assert!(find_odd_t(5, 3, 3).is_err());
        assert!(find_odd_t(2, 3, 3).is_err());
        for (r, s, a) in [(1, 3, 2), (3, 5, 4), (5, 7, 3)] {
            assert_eq!(find_odd_t(r, s, a).unwrap(), brute_odd_t(r, s, a));
        }
    }

    #[test]
    fn find_odd_t_matches_brute_force() {
        for r in (1u64..40).step_by(2) {
            for s in ((r + 2)..42).step_by(2) {
                for a in 1..14 {
                    assert_eq!(find_odd_t(r, s, a).unwrap(), brute_odd_t(r, s, a), "{r} {s} {a}");
                }
            }
        }
    }

    proptest! {
        #[test]
        fn v2_of_sum_takes_smaller_valuation(
            p1 in prop_oneof![-500i64..=-1, 1i64..=500], q1 in 1i64..500,
            p2 in prop_oneof![-500i64..=-1, 1i64..=500], q2 in 1i64..500,
            shift in 1u32..8,
        ) {
            let w2 = ratio(p2, q2);
            // Force v2(w1) > v2(w2) by scaling with a power of two.
            let base = ratio(p1, q1);
            let gap = v2(&w2).unwrap() - v2(&base).unwrap() + shift as i64;
            let w1 = &base * &ratio(2, 1).powi(gap as i32).unwrap();
            prop_assert!(v2(&w1).unwrap() > v2(&w2).unwrap());
            prop_assert_eq!(v2(&(&w1 + &w2)).unwrap(), v2(&w2).unwrap());
        }

        #[test]
        fn odd_t_brackets_power(r in (0u64..200).prop_map(|x| 2 * x + 1), d in 1u64..50, a in 1u32..40) {
            let s = r + 2 * d;
            if let Some(t) = find_odd_t(r, s, a).unwrap() {
                prop_assert!(t % 2 == 1);
                let (rt, st) = (r * t, s * t);
                prop_assert!(rt % 2 == 1 && st % 2 == 1);
                prop_assert!(63 - rt.leading_zeros() <= a - 1);
                prop_assert!(a <= 63 - st.leading_zeros());
            }
        }
    }
}
