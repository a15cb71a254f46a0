use std::collections::HashMap;
use std::fmt::Debug;

use num_complex::Complex64;

use crate::arith::{ExactRational, MoebiusTable};
use crate::error::{domain, range_err, Result};
use crate::sequences::{BitSequence, Block};

/// Values a cylinder function may take. Rational values accumulate exactly;
/// complex values accumulate in floating point and compare with a relative
/// tolerance of `1e-9`.
pub trait CylinderValue: Clone + Debug + Send + Sync {
    type Norm: Clone + Debug;

    fn zero() -> Self;
    /// `self · k`.
    fn times(&self, k: i64) -> Self;
    fn plus(&self, other: &Self) -> Self;
    fn div_n(&self, n: u64) -> Self;
    fn same(&self, other: &Self) -> bool;
    fn norm(&self) -> Self::Norm;
    fn magnitude(&self) -> f64;
    fn norm_max(a: Self::Norm, b: Self::Norm) -> Self::Norm;
    fn norm_zero() -> Self::Norm;
    /// `a ≤ k · b`.
    fn norm_le_multiple(a: &Self::Norm, k: u64, b: &Self::Norm) -> bool;
}

impl CylinderValue for ExactRational {
    type Norm = ExactRational;

    fn zero() -> Self {
        ExactRational::zero()
    }
    fn times(&self, k: i64) -> Self {
        self.scale(k)
    }
    fn plus(&self, other: &Self) -> Self {
        self + other
    }
    fn div_n(&self, n: u64) -> Self {
        self.checked_div(&ExactRational::from(n as i64)).expect("n >= 1")
    }
    fn same(&self, other: &Self) -> bool {
        self == other
    }
    fn norm(&self) -> Self::Norm {
        self.abs()
    }
    fn magnitude(&self) -> f64 {
        self.abs().to_f64()
    }
    fn norm_max(a: Self::Norm, b: Self::Norm) -> Self::Norm {
        a.max(b)
    }
    fn norm_zero() -> Self::Norm {
        ExactRational::zero()
    }
    fn norm_le_multiple(a: &Self::Norm, k: u64, b: &Self::Norm) -> bool {
        *a <= b.scale(k as i64)
    }
}

const COMPLEX_TOL: f64 = 1e-9;

impl CylinderValue for Complex64 {
    type Norm = f64;

    fn zero() -> Self {
        Complex64::new(0.0, 0.0)
    }
    fn times(&self, k: i64) -> Self {
        self * k as f64
    }
    fn plus(&self, other: &Self) -> Self {
        self + other
    }
    fn div_n(&self, n: u64) -> Self {
        self / n as f64
    }
    fn same(&self, other: &Self) -> bool {
        let scale = self.norm().max(other.norm()).max(1.0);
        (self - other).norm() <= COMPLEX_TOL * scale
    }
    fn norm(&self) -> f64 {
        Complex64::norm(*self)
    }
    fn magnitude(&self) -> f64 {
        Complex64::norm(*self)
    }
    fn norm_max(a: f64, b: f64) -> f64 {
        a.max(b)
    }
    fn norm_zero() -> f64 {
        0.0
    }
    fn norm_le_multiple(a: &f64, k: u64, b: &f64) -> bool {
        *a <= k as f64 * b * (1.0 + COMPLEX_TOL)
    }
}

/// `f(w) = table[w[a, a+ℓ)]`. Words are indexed with `w(a)` as the most
/// significant bit.
#[derive(Debug, Clone)]
pub struct CylinderFunction<V: CylinderValue> {
    offset: i64,
    length: u32,
    table: Vec<V>,
    partial: bool,
}

/// Largest supported window length.
pub const MAX_CYLINDER_LENGTH: u32 = 20;

impl<V: CylinderValue> CylinderFunction<V> {
    pub fn new(offset: i64, length: u32, table: Vec<V>) -> Result<Self> {
        if length == 0 || length > MAX_CYLINDER_LENGTH {
            return Err(domain!("cylinder length must lie in 1..={MAX_CYLINDER_LENGTH}, got {length}"));
        }
        if table.len() != 1 << length {
            return Err(domain!("table has {} entries, expected {}", table.len(), 1u64 << length));
        }
        Ok(Self { offset, length, table, partial: false })
    }

    /// Table given on some words only; the others take the value 0 and the
    /// function is flagged as partial.
    pub fn from_words(offset: i64, length: u32, values: HashMap<Block, V>) -> Result<Self> {
        let mut table = vec![V::zero(); 1usize << length.min(MAX_CYLINDER_LENGTH)];
        let full = values.len() == table.len();
        for (word, v) in values {
            if word.len() != length as usize {
                return Err(domain!("word {word} has length {}, expected {length}", word.len()));
            }
            table[word_index(word.bits())] = v;
        }
        let mut f = Self::new(offset, length, table)?;
        f.partial = !full;
        Ok(f)
    }

    /// `f ≡ c`.
    pub fn constant(value: V) -> Self {
        Self { offset: 0, length: 1, table: vec![value.clone(), value], partial: false }
    }

    pub fn offset(&self) -> i64 {
        self.offset
    }

    pub fn length(&self) -> u32 {
        self.length
    }

    pub fn table(&self) -> &[V] {
        &self.table
    }

    pub fn is_partial(&self) -> bool {
        self.partial
    }

    /// `F = max |f|`.
    pub fn bound(&self) -> V::Norm {
        self.table.iter().map(V::norm).fold(V::norm_zero(), V::norm_max)
    }

    /// Index of `w[a+k, a+k+ℓ)` in the table.
    pub fn word_at<S: BitSequence + ?Sized>(&self, w: &S, k: u64) -> Result<usize> {
        let start = self.offset + k as i64;
        if start < 0 {
            return Err(range_err!("window starts at negative index {start}"));
        }
        let mut idx = 0usize;
        for j in 0..self.length as u64 {
            let b = w.bit(start as u64 + j).ok_or_else(|| range_err!("w({}) undefined", start as u64 + j))?;
            idx = idx << 1 | b as usize;
        }
        Ok(idx)
    }

    /// `f(T^k w)`.
    pub fn eval<S: BitSequence + ?Sized>(&self, w: &S, k: u64) -> Result<V> {
        Ok(self.table[self.word_at(w, k)?].clone())
    }

    /// `Σ_word f(word) · counts[word]`.
    pub(crate) fn combine(&self, counts: &HashMap<usize, i64>) -> V {
        let mut keys: Vec<_> = counts.keys().copied().collect();
        keys.sort_unstable();
        keys.into_iter()
            .filter(|k| counts[k] != 0)
            .fold(V::zero(), |acc, k| acc.plus(&self.table[k].times(counts[&k])))
    }
}

fn word_index(bits: &[u8]) -> usize {
    bits.iter().fold(0usize, |acc, &b| acc << 1 | b as usize)
}

/// `Σ_{k=1}^{N} f(T^k w) μ(k)`.
///
/// The sum is regrouped by word: `Σ_word f(word) · Σ_{k : w[a+k, a+k+ℓ) = word} μ(k)`,
/// so the inner sums are exact integers whatever the value type.
pub fn weighted_total<V: CylinderValue, S: BitSequence + ?Sized>(
    f: &CylinderFunction<V>,
    w: &S,
    mu: &MoebiusTable,
    n: u64,
) -> Result<V> {
    mu.ensure_covers(n)?;
    let mut counts: HashMap<usize, i64> = HashMap::new();
    for k in 1..=n {
        let word = f.word_at(w, k)?;
        *counts.entry(word).or_default() += mu.mu(k) as i64;
    }
    Ok(f.combine(&counts))
}

/// `(1/N) Σ_{k=1}^{N} f(T^k w) μ(k)`.
pub fn weighted_sum<V: CylinderValue, S: BitSequence + ?Sized>(
    f: &CylinderFunction<V>,
    w: &S,
    mu: &MoebiusTable,
    n: u64,
) -> Result<V> {
    if n == 0 {
        return Err(domain!("weighted_sum needs N >= 1"));
    }
    Ok(weighted_total(f, w, mu, n)?.div_n(n))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{moebius_sieve, ratio};
    use crate::sequences::{ThueMorse, ThueToeplitz};

    #[test]
    fn construction_checks() {
        assert!(CylinderFunction::new(0, 2, vec![ratio(1, 1); 3]).is_err());
        assert!(CylinderFunction::<ExactRational>::new(0, 0, vec![]).is_err());
        let mut m = HashMap::new();
        m.insert("01".parse::<Block>().unwrap(), ratio(1, 1));
        let f = CylinderFunction::from_words(0, 2, m).unwrap();
        assert!(f.is_partial());
        assert_eq!(f.table(), &[ratio(0, 1), ratio(1, 1), ratio(0, 1), ratio(0, 1)]);
        assert_eq!(f.bound(), ratio(1, 1));
        let mut bad = HashMap::new();
        bad.insert("011".parse::<Block>().unwrap(), ratio(1, 1));
        assert!(CylinderFunction::from_words(0, 2, bad).is_err());
    }

    #[test]
    fn constant_function_gives_scaled_mertens() {
        let mu = moebius_sieve(5000).unwrap();
        let f = CylinderFunction::constant(ratio(3, 7));
        for n in [1, 10, 999, 5000] {
            let got = weighted_sum(&f, &ThueMorse, &mu, n).unwrap();
            let expected = ratio(3, 7).scale(mu.mertens(n).unwrap()).div_n(n);
            assert_eq!(got, expected);
        }
    }

    #[test]
    fn regrouped_sum_matches_term_by_term() {
        let mu = moebius_sieve(3000).unwrap();
        let table: Vec<ExactRational> = (0..8).map(|i| ratio(i * i - 5, 4)).collect();
        let f = CylinderFunction::new(2, 3, table).unwrap();
        let direct: ExactRational = (1..=3000u64)
            .map(|k| f.eval(&ThueToeplitz, k).unwrap().scale(mu.mu(k) as i64))
            .sum();
        assert_eq!(weighted_total(&f, &ThueToeplitz, &mu, 3000).unwrap(), direct);
    }

    #[test]
    fn complex_tables() {
        let mu = moebius_sieve(2000).unwrap();
        let table = vec![Complex64::new(1.0, 0.5), Complex64::new(-0.25, 2.0)];
        let f = CylinderFunction::new(0, 1, table).unwrap();
        let total = weighted_total(&f, &ThueMorse, &mu, 2000).unwrap();
        let mut direct = Complex64::new(0.0, 0.0);
        for k in (1..=2000u64).rev() {
            direct += f.eval(&ThueMorse, k).unwrap() * mu.mu(k) as f64;
        }
        assert!(total.same(&direct));
        assert!((f.bound() - Complex64::new(-0.25, 2.0).norm()).abs() < 1e-15);
    }

    #[test]
    fn negative_windows_rejected() {
        let mu = moebius_sieve(10).unwrap();
        let f = CylinderFunction::new(-3, 1, vec![ratio(1, 1), ratio(-1, 1)]).unwrap();
        assert!(weighted_sum(&f, &ThueMorse, &mu, 10).is_err());
        assert!(weighted_sum(&CylinderFunction::constant(ratio(1, 1)), &ThueMorse, &mu, 11).is_err());
    }
}
