use super::block::Block;
use super::toeplitz::ToeplitzSkeleton;
use crate::error::{range_err, Error, Result};

/// A one-sided 0/1 sequence read through an index accessor.
pub trait BitSequence: Sync {
    /// `w(n)`, or `None` outside the sequence's domain (past a finite
    /// horizon, or at an unfilled place).
    fn bit(&self, n: u64) -> Option<u8>;

    /// Period-`2^stage` skeleton of a Toeplitz sequence whose construction
    /// is known. Sequences without such structure report `Unsupported`.
    fn toeplitz_skeleton(&self, stage: u32) -> Result<ToeplitzSkeleton> {
        let _ = stage;
        Err(Error::Unsupported("sequence has no declared Toeplitz stage structure".into()))
    }

    /// `(-1)^{w(n)}`.
    fn sign(&self, n: u64) -> Option<i8> {
        self.bit(n).map(|b| 1 - 2 * b as i8)
    }
}

impl<T: BitSequence + ?Sized> BitSequence for &T {
    fn bit(&self, n: u64) -> Option<u8> {
        (**self).bit(n)
    }
    fn toeplitz_skeleton(&self, stage: u32) -> Result<ToeplitzSkeleton> {
        (**self).toeplitz_skeleton(stage)
    }
}

impl<T: BitSequence + ?Sized> BitSequence for Box<T> {
    fn bit(&self, n: u64) -> Option<u8> {
        (**self).bit(n)
    }
    fn toeplitz_skeleton(&self, stage: u32) -> Result<ToeplitzSkeleton> {
        (**self).toeplitz_skeleton(stage)
    }
}

impl BitSequence for Block {
    fn bit(&self, n: u64) -> Option<u8> {
        self.bits().get(usize::try_from(n).ok()?).copied()
    }
}

/// `w[a, a+length)`.
pub fn window<S: BitSequence + ?Sized>(seq: &S, a: i64, length: usize) -> Result<Block> {
    let mut bits = Vec::with_capacity(length);
    for j in 0..length as i64 {
        let idx = a + j;
        if idx < 0 {
            return Err(range_err!("index {idx} is negative for a one-sided sequence"));
        }
        bits.push(seq.bit(idx as u64).ok_or_else(|| range_err!("index {idx} is not defined"))?);
    }
    Block::new(bits)
}

/// Parity of the number of 1s in the binary expansion of `n`.
#[inline]
pub fn thue_morse_bit(n: u64) -> u8 {
    (n.count_ones() & 1) as u8
}

/// `x(n) + x(n+1) mod 2` for the Thue-Morse sequence `x`.
#[inline]
pub fn thue_toeplitz_bit(n: u64) -> u8 {
    thue_morse_bit(n) ^ thue_morse_bit(n + 1)
}

/// The Thue-Morse sequence `01 × 01 × ...`.
#[derive(Debug, Clone, Copy, Default)]
pub struct ThueMorse;

impl BitSequence for ThueMorse {
    #[inline]
    fn bit(&self, n: u64) -> Option<u8> {
        Some(thue_morse_bit(n))
    }
}

/// The Toeplitz factor of Thue-Morse.
#[derive(Debug, Clone, Copy, Default)]
pub struct ThueToeplitz;

impl BitSequence for ThueToeplitz {
    #[inline]
    fn bit(&self, n: u64) -> Option<u8> {
        Some(thue_toeplitz_bit(n))
    }

    fn toeplitz_skeleton(&self, stage: u32) -> Result<ToeplitzSkeleton> {
        if stage == 0 || stage > 24 {
            return Err(range_err!("Thue-Toeplitz stage must lie in 1..=24, got {stage}"));
        }
        let period = 1u64 << stage;
        // Two full periods are enough to read off a consistent skeleton.
        let partial = super::toeplitz::thue_toeplitz_partial(stage, 2 * period)?;
        partial.skeleton(period)
    }
}

/// A set of binary digit positions, numbered from 1: position `i` refers to
/// the digit of weight `2^{i-1}`.
#[derive(Clone)]
pub enum DigitSet {
    All,
    Finite(std::collections::BTreeSet<u32>),
    Predicate(std::sync::Arc<dyn Fn(u32) -> bool + Send + Sync>),
}

impl DigitSet {
    pub fn empty() -> Self {
        DigitSet::Finite(Default::default())
    }

    pub fn finite(positions: impl IntoIterator<Item = u32>) -> Result<Self> {
        let set: std::collections::BTreeSet<u32> = positions.into_iter().collect();
        if set.contains(&0) {
            return Err(crate::error::domain!("digit positions start at 1"));
        }
        Ok(DigitSet::Finite(set))
    }

    pub fn from_fn(f: impl Fn(u32) -> bool + Send + Sync + 'static) -> Self {
        DigitSet::Predicate(std::sync::Arc::new(f))
    }

    pub fn even() -> Self {
        Self::from_fn(|i| i % 2 == 0)
    }

    pub fn contains(&self, i: u32) -> bool {
        match self {
            DigitSet::All => i >= 1,
            DigitSet::Finite(s) => s.contains(&i),
            DigitSet::Predicate(f) => i >= 1 && f(i),
        }
    }

    /// Bit mask over the 64 digits of a `u64`.
    pub fn mask(&self) -> u64 {
        (1..=64u32).filter(|&i| self.contains(i)).fold(0u64, |m, i| m | 1 << (i - 1))
    }
}

impl std::fmt::Debug for DigitSet {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            DigitSet::All => write!(f, "DigitSet::All"),
            DigitSet::Finite(s) => write!(f, "DigitSet::Finite({s:?})"),
            DigitSet::Predicate(_) => write!(f, "DigitSet::Predicate(mask={:#x})", self.mask()),
        }
    }
}

/// `s_E(n) mod 2`: parity of the digits of `n` at the positions in `E`.
pub fn s_e_bit(n: u64, e: &DigitSet) -> u8 {
    ((n & e.mask()).count_ones() & 1) as u8
}

/// `n ↦ s_E(n) mod 2` as a sequence.
#[derive(Debug, Clone)]
pub struct SESequence {
    mask: u64,
}

impl SESequence {
    pub fn new(e: &DigitSet) -> Self {
        Self { mask: e.mask() }
    }
}

impl BitSequence for SESequence {
    fn bit(&self, n: u64) -> Option<u8> {
        Some(((n & self.mask).count_ones() & 1) as u8)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn thue_morse_values() {
        assert_eq!(thue_morse_bit(0), 0);
        assert_eq!(thue_morse_bit(3), 0);
        let s: String = (0..16).map(|n| thue_morse_bit(n).to_string()).collect();
        assert_eq!(s, "0110100110010110");
    }

    #[test]
    fn thue_toeplitz_values() {
        assert_eq!(thue_toeplitz_bit(0), 1);
        assert_eq!(thue_toeplitz_bit(1), 0);
        assert!((0..=10_000).step_by(2).all(|n| thue_toeplitz_bit(n) == 1));
        assert!((1..=10_000).step_by(4).all(|n| thue_toeplitz_bit(n) == 0));
    }

    #[test]
    fn windows() {
        assert_eq!(window(&ThueMorse, 0, 4).unwrap().to_string(), "0110");
        assert!(window(&ThueMorse, 17, 0).unwrap().is_empty());
        assert_eq!(window(&ThueToeplitz, 0, 7).unwrap().to_string(), "1011101");
        assert!(matches!(window(&ThueMorse, -1, 3), Err(Error::Range(_))));
        let b: Block = "0110".parse().unwrap();
        assert!(window(&b, 2, 3).is_err());
        assert_eq!(window(&b, 1, 3).unwrap().to_string(), "110");
    }

    #[test]
    fn s_e_examples() {
        assert!((0..4096).all(|n| s_e_bit(n, &DigitSet::All) == thue_morse_bit(n)));
        assert!((0..4096).all(|n| s_e_bit(n, &DigitSet::empty()) == 0));
        assert_eq!(s_e_bit(5, &DigitSet::finite([1]).unwrap()), 1);
        assert_eq!(s_e_bit(5, &DigitSet::finite([2]).unwrap()), 0);
        assert!(DigitSet::finite([0, 3]).is_err());
        assert_eq!(DigitSet::even().mask() & 0b1111, 0b1010);
    }

    #[test]
    fn no_skeleton_for_thue_morse() {
        assert!(matches!(ThueMorse.toeplitz_skeleton(3), Err(Error::Unsupported(_))));
    }
}
