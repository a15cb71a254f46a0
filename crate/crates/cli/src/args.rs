use std::str::FromStr;

use morsekit::sequences::{BitSequence, Block, DigitSet, MorseSpec, SESequence, ThueToeplitz};

/// A natural number written plainly or as `b^e`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Nat(pub u64);

impl FromStr for Nat {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let s = s.trim().replace('_', "");
        if let Some((b, e)) = s.split_once('^') {
            let b: u64 = b.parse().map_err(|_| format!("bad base in {s:?}"))?;
            let e: u32 = e.parse().map_err(|_| format!("bad exponent in {s:?}"))?;
            return b.checked_pow(e).map(Nat).ok_or_else(|| format!("{s} overflows"));
        }
        s.parse().map(Nat).map_err(|_| format!("expected a natural number, got {s:?}"))
    }
}

/// `K` or the inclusive range `A..B`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct NatRange {
    pub lo: u64,
    pub hi: u64,
    pub single: bool,
}

impl FromStr for NatRange {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s.split_once("..") {
            Some((a, b)) => {
                let (lo, hi) = (a.parse::<Nat>()?.0, b.trim_start_matches('=').parse::<Nat>()?.0);
                if lo > hi {
                    return Err(format!("empty range {s}"));
                }
                Ok(NatRange { lo, hi, single: false })
            }
            None => {
                let k = s.parse::<Nat>()?.0;
                Ok(NatRange { lo: k, hi: k, single: true })
            }
        }
    }
}

/// Comma-separated naturals.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NatList(pub Vec<u64>);

impl FromStr for NatList {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        s.split(',')
            .filter(|t| !t.trim().is_empty())
            .map(|t| t.parse::<Nat>().map(|n| n.0))
            .collect::<Result<Vec<_>, _>>()
            .map(NatList)
    }
}

/// Sequence selector: `thue-toeplitz`, `se=1,3,5` or any Morse spec text.
#[derive(Debug, Clone)]
pub enum SeqArg {
    Morse(MorseSpec),
    ThueToeplitz,
    DigitSum(Vec<u32>, SESequence),
}

impl FromStr for SeqArg {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let t = s.trim();
        if matches!(t, "thue-toeplitz" | "tt" | "toeplitz") {
            return Ok(SeqArg::ThueToeplitz);
        }
        if let Some(list) = t.strip_prefix("se=") {
            let positions = list
                .split(',')
                .filter(|p| !p.is_empty())
                .map(|p| p.parse::<u32>().map_err(|_| format!("bad digit position {p:?}")))
                .collect::<Result<Vec<_>, _>>()?;
            let e = DigitSet::finite(positions.clone()).map_err(|e| e.to_string())?;
            return Ok(SeqArg::DigitSum(positions, SESequence::new(&e)));
        }
        t.parse::<MorseSpec>().map(SeqArg::Morse).map_err(|e| e.to_string())
    }
}

impl SeqArg {
    pub fn with<R>(&self, f: impl FnOnce(&dyn BitSequence) -> R) -> R {
        match self {
            SeqArg::Morse(spec) => f(&spec.sequence()),
            SeqArg::ThueToeplitz => f(&ThueToeplitz),
            SeqArg::DigitSum(_, seq) => f(seq),
        }
    }

    pub fn is_thue_morse(&self) -> bool {
        matches!(self, SeqArg::Morse(spec) if *spec == MorseSpec::thue_morse())
    }

    pub fn describe(&self) -> String {
        match self {
            SeqArg::Morse(spec) => spec.to_string(),
            SeqArg::ThueToeplitz => "thue-toeplitz".into(),
            SeqArg::DigitSum(p, _) => format!("se={}", p.iter().map(u32::to_string).collect::<Vec<_>>().join(",")),
        }
    }
}

pub fn parse_block(s: &str) -> Result<Block, String> {
    s.parse::<Block>().map_err(|e| e.to_string())
}
