//! Generalized Morse sequences `b^0 × b^1 × ...`.
//!
//! Text form accepted by [`MorseSpec::from_str`]:
//!
//! * `01*` or `tm`: every block is `01` (Thue-Morse).
//! * `001,01*`: comma-separated blocks; starred blocks form the periodic
//!   tail, repeated in order forever. Unstarred blocks must precede starred
//!   ones. A spec without a starred block is finite. Empty items (such as a
//!   trailing comma) are ignored.
//! * `base=001;tm_runs=auto`: Thue-Morse type template. Every block is
//!   `base` except for runs of `01` blocks, the `m`-th run having length `m`.
//!   `auto` places run `m` at positions `m(m+1)/2 .. m(m+1)/2 + m - 1`, so
//!   consecutive runs are separated by one `base` block.
//!   `tm_runs=3,10,40` places run `m` at the `m`-th listed position instead;
//!   past the last listed run every block is `base`.

use std::fmt;
use std::str::FromStr;

use super::accessor::{BitSequence, DigitSet};
use super::block::Block;
use crate::error::{domain, range_err, Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RunLayout {
    Auto,
    Explicit(Vec<u64>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MorseSpec {
    /// `prefix` followed by `tail` repeated cyclically; finite when `tail`
    /// is empty.
    Explicit { prefix: Vec<Block>, tail: Vec<Block> },
    /// `base` everywhere except for spliced runs of `01`.
    TmType { base: Block, runs: RunLayout },
}

/// Length of a run of `01` blocks starting at some level.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RunLength {
    Finite(u64),
    Unbounded,
}

fn tm_block() -> Block {
    Block::new(vec![0, 1]).expect("bits")
}

fn check_block(b: &Block) -> Result<()> {
    if b.len() < 2 {
        return Err(domain!("Morse block {b} is shorter than 2"));
    }
    if b.bits()[0] != 0 {
        return Err(domain!("Morse block {b} does not start with 0"));
    }
    Ok(())
}

fn is_triangular(x: u64) -> bool {
    // x = m(m+1)/2  <=>  8x + 1 is a perfect square
    let d = 8u128 * x as u128 + 1;
    let r = (d as f64).sqrt() as u128;
    (r.saturating_sub(2)..=r + 2).any(|c| c * c == d)
}

impl MorseSpec {
    pub fn thue_morse() -> Self {
        MorseSpec::Explicit { prefix: vec![], tail: vec![tm_block()] }
    }

    /// `B × B × ...`, the fixed point of `0 ↦ B, 1 ↦ complement(B)`.
    pub fn substitution(b: Block) -> Result<Self> {
        Self::explicit(vec![], vec![b])
    }

    pub fn explicit(prefix: Vec<Block>, tail: Vec<Block>) -> Result<Self> {
        for b in prefix.iter().chain(&tail) {
            check_block(b)?;
        }
        if prefix.is_empty() && tail.is_empty() {
            return Err(domain!("Morse spec has no blocks"));
        }
        Ok(MorseSpec::Explicit { prefix, tail })
    }

    pub fn tm_type(base: Block, runs: RunLayout) -> Result<Self> {
        check_block(&base)?;
        if let RunLayout::Explicit(starts) = &runs {
            for (m, pair) in starts.windows(2).enumerate() {
                // run m+1 occupies [pair[0], pair[0] + m + 1)
                if pair[0] + m as u64 + 1 > pair[1] {
                    return Err(domain!("tm run {} at {} overlaps the next run at {}", m + 1, pair[0], pair[1]));
                }
            }
        }
        Ok(MorseSpec::TmType { base, runs })
    }

    /// Number of blocks, or `None` when the description is infinite.
    pub fn depth(&self) -> Option<usize> {
        match self {
            MorseSpec::Explicit { prefix, tail } if tail.is_empty() => Some(prefix.len()),
            _ => None,
        }
    }

    /// `b^i`, or `None` past the end of a finite spec.
    pub fn block(&self, i: u64) -> Option<&Block> {
        match self {
            MorseSpec::Explicit { prefix, tail } => {
                let i = usize::try_from(i).ok()?;
                if i < prefix.len() {
                    Some(&prefix[i])
                } else if tail.is_empty() {
                    None
                } else {
                    Some(&tail[(i - prefix.len()) % tail.len()])
                }
            }
            MorseSpec::TmType { base, runs } => {
                if self.in_tm_run(i, runs) {
                    Some(tm_block_ref())
                } else {
                    Some(base)
                }
            }
        }
    }

    fn in_tm_run(&self, i: u64, runs: &RunLayout) -> bool {
        match runs {
            // Base blocks sit exactly at positions i with i+1 triangular.
            RunLayout::Auto => !is_triangular(i + 1),
            RunLayout::Explicit(starts) => starts
                .iter()
                .enumerate()
                .any(|(m, &s)| i >= s && i < s + m as u64 + 1),
        }
    }

    /// Whether the spec declares a stabilizing Thue-Morse subsequence: runs
    /// of `01` blocks at known positions.
    pub fn is_tm_type(&self) -> bool {
        match self {
            MorseSpec::Explicit { tail, .. } => !tail.is_empty() && tail.iter().all(|b| *b == tm_block()),
            MorseSpec::TmType { .. } => true,
        }
    }

    /// Number of consecutive `01` blocks starting at level `k`.
    pub fn run_length_at(&self, k: u64) -> RunLength {
        match self {
            MorseSpec::Explicit { prefix, tail } => {
                let tm = tm_block();
                let mut n = 0u64;
                let mut i = k as usize;
                while i < prefix.len() {
                    if prefix[i] != tm {
                        return RunLength::Finite(n);
                    }
                    n += 1;
                    i += 1;
                }
                if !tail.is_empty() && tail.iter().all(|b| *b == tm) {
                    return RunLength::Unbounded;
                }
                if tail.is_empty() {
                    return RunLength::Finite(n);
                }
                // The tail contains a non-01 block, so the run ends within
                // one pass over it.
                loop {
                    let b = &tail[(i - prefix.len()) % tail.len()];
                    if *b != tm {
                        return RunLength::Finite(n);
                    }
                    n += 1;
                    i += 1;
                }
            }
            MorseSpec::TmType { base, .. } => {
                if *base == tm_block() {
                    return RunLength::Unbounded;
                }
                let mut n = 0u64;
                while self.block(k + n).is_some_and(|b| *b == tm_block()) {
                    n += 1;
                }
                RunLength::Finite(n)
            }
        }
    }

    /// `q_k = p_0 · ... · p_{k-1}`.
    pub fn scale(&self, k: u64) -> Result<u64> {
        let mut q = 1u64;
        for i in 0..k {
            let b = self.block(i).ok_or_else(|| range_err!("spec has no block {i}"))?;
            q = q
                .checked_mul(b.len() as u64)
                .ok_or_else(|| range_err!("q_{k} overflows u64"))?;
        }
        Ok(q)
    }

    /// Lazy accessor for the infinite (or finite) product sequence.
    pub fn sequence(&self) -> MorseSequence<'_> {
        MorseSequence { spec: self }
    }
}

fn tm_block_ref() -> &'static Block {
    static TM: std::sync::OnceLock<Block> = std::sync::OnceLock::new();
    TM.get_or_init(tm_block)
}

/// `b^0 × ... × b^{k-1}` by left-folding the block product, starting from the
/// one-letter block `0`.
pub fn morse_prefix(spec: &MorseSpec, k: u64) -> Result<Block> {
    let mut acc = Block::new(vec![0])?;
    for i in 0..k {
        let b = spec.block(i).ok_or_else(|| range_err!("spec has no block {i}"))?;
        acc = acc.product(b)?;
    }
    Ok(acc)
}

/// Kakutani spec with `b^n = 01` iff `n + 1 ∈ E`, else `00`, for `n < depth`.
pub fn kakutani_spec_from_e(e: &DigitSet, depth: u32) -> Result<MorseSpec> {
    if depth == 0 {
        return Err(domain!("Kakutani spec needs depth >= 1"));
    }
    let blocks = (0..depth)
        .map(|n| Block::new(if e.contains(n + 1) { vec![0, 1] } else { vec![0, 0] }))
        .collect::<Result<Vec<_>>>()?;
    MorseSpec::explicit(blocks, vec![])
}

/// Index accessor for `b^0 × b^1 × ...`.
///
/// Writing `n = d_0 + p_0 d_1 + p_0 p_1 d_2 + ...` in the mixed radix of the
/// block lengths, `y(n) = b^0(d_0) + b^1(d_1) + ... mod 2`.
#[derive(Debug, Clone, Copy)]
pub struct MorseSequence<'a> {
    spec: &'a MorseSpec,
}

impl BitSequence for MorseSequence<'_> {
    fn bit(&self, mut n: u64) -> Option<u8> {
        let mut acc = 0u8;
        let mut level = 0u64;
        while n > 0 {
            let b = self.spec.block(level)?;
            let p = b.len() as u64;
            acc ^= b.bits()[(n % p) as usize];
            n /= p;
            level += 1;
        }
        Some(acc)
    }
}

impl fmt::Display for MorseSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MorseSpec::Explicit { prefix, tail } => {
                let items: Vec<String> = prefix
                    .iter()
                    .map(|b| b.to_string())
                    .chain(tail.iter().map(|b| format!("{b}*")))
                    .collect();
                write!(f, "{}", items.join(","))
            }
            MorseSpec::TmType { base, runs } => match runs {
                RunLayout::Auto => write!(f, "base={base};tm_runs=auto"),
                RunLayout::Explicit(v) => {
                    let v: Vec<String> = v.iter().map(|x| x.to_string()).collect();
                    write!(f, "base={base};tm_runs={}", v.join(","))
                }
            },
        }
    }
}

impl FromStr for MorseSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.eq_ignore_ascii_case("tm") {
            return Ok(Self::thue_morse());
        }
        if s.contains('=') {
            let mut base = None;
            let mut runs = None;
            for part in s.split(';').map(str::trim).filter(|p| !p.is_empty()) {
                let (key, value) = part
                    .split_once('=')
                    .ok_or_else(|| Error::Parse(format!("expected key=value, got {part:?}")))?;
                match key.trim() {
                    "base" => base = Some(value.parse::<Block>()?),
                    "tm_runs" => {
                        let value = value.trim();
                        runs = Some(if value == "auto" {
                            RunLayout::Auto
                        } else {
                            RunLayout::Explicit(
                                value
                                    .split(',')
                                    .filter(|x| !x.trim().is_empty())
                                    .map(|x| {
                                        x.trim()
                                            .parse::<u64>()
                                            .map_err(|_| Error::Parse(format!("bad run position {x:?}")))
                                    })
                                    .collect::<Result<Vec<_>>>()?,
                            )
                        })
                    }
                    other => return Err(Error::Parse(format!("unknown key {other:?}"))),
                }
            }
            let base = base.ok_or_else(|| Error::Parse("missing base=".into()))?;
            return Self::tm_type(base, runs.unwrap_or(RunLayout::Auto));
        }
        let mut prefix = Vec::new();
        let mut tail = Vec::new();
        for item in s.split(',').map(str::trim).filter(|x| !x.is_empty()) {
            if let Some(b) = item.strip_suffix('*') {
                tail.push(b.parse::<Block>()?);
            } else if !tail.is_empty() {
                return Err(Error::Parse(format!("block {item:?} follows the periodic tail")));
            } else {
                prefix.push(item.parse::<Block>()?);
            }
        }
        Self::explicit(prefix, tail)
    }
}
