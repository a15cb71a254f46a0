//! Toeplitz sequences built by filling arithmetic progressions.

use serde::Serialize;

use super::accessor::BitSequence;
use super::block::Block;
use crate::error::{domain, range_err, Error, Result};

/// How the positions of a progression fill are counted.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum FillMode {
    /// Absolute indices `start, start + step, ...`; every target must be a hole.
    Absolute,
    /// Among the currently unfilled places, listed in increasing order, fill
    /// those with hole-rank `start, start + step, ...`.
    EveryKthHole,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct FillStep<S> {
    pub start: u64,
    pub step: u64,
    pub symbol: S,
}

/// A one-sided sequence on `[0, horizon)` with holes, grown by progression
/// fills. Filled cells are never overwritten.
#[derive(Debug, Clone)]
pub struct PartialSequence<S> {
    alphabet: Vec<S>,
    cells: Vec<Option<S>>,
    log: Vec<(FillMode, FillStep<S>)>,
}

impl<S: Copy + PartialEq + std::fmt::Debug> PartialSequence<S> {
    pub fn new(alphabet: Vec<S>, horizon: u64) -> Result<Self> {
        if alphabet.is_empty() {
            return Err(domain!("empty alphabet"));
        }
        let horizon = usize::try_from(horizon).map_err(|_| range_err!("horizon {horizon} too large"))?;
        Ok(Self { alphabet, cells: vec![None; horizon], log: Vec::new() })
    }

    pub fn horizon(&self) -> u64 {
        self.cells.len() as u64
    }

    pub fn alphabet(&self) -> &[S] {
        &self.alphabet
    }

    pub fn get(&self, n: u64) -> Option<S> {
        self.cells.get(n as usize).copied().flatten()
    }

    pub fn cells(&self) -> &[Option<S>] {
        &self.cells
    }

    pub fn fill_log(&self) -> &[(FillMode, FillStep<S>)] {
        &self.log
    }

    /// Positions still unfilled, in increasing order.
    pub fn holes(&self) -> impl Iterator<Item = u64> + '_ {
        self.cells.iter().enumerate().filter(|(_, c)| c.is_none()).map(|(i, _)| i as u64)
    }

    pub fn fill(&mut self, mode: FillMode, step: FillStep<S>) -> Result<()> {
        if step.step == 0 {
            return Err(domain!("progression step must be >= 1"));
        }
        if !self.alphabet.contains(&step.symbol) {
            return Err(domain!("symbol {:?} is not in the alphabet", step.symbol));
        }
        match mode {
            FillMode::Absolute => {
                let targets = (step.start..self.horizon()).step_by(step.step as usize);
                if let Some(taken) = targets.clone().find(|&i| self.cells[i as usize].is_some()) {
                    return Err(Error::Construction(format!(
                        "progression ({}, {}) would overwrite filled cell {taken}",
                        step.start, step.step
                    )));
                }
                for i in targets {
                    self.cells[i as usize] = Some(step.symbol);
                }
            }
            FillMode::EveryKthHole => {
                let mut rank = 0u64;
                for cell in self.cells.iter_mut().filter(|c| c.is_none()) {
                    if rank >= step.start && (rank - step.start) % step.step == 0 {
                        *cell = Some(step.symbol);
                    }
                    rank += 1;
                }
            }
        }
        self.log.push((mode, step));
        Ok(())
    }

    /// Reads the period-`period` pattern: each residue class is either
    /// filled with one symbol throughout the horizon or entirely unfilled.
    pub fn skeleton_cells(&self, period: u64) -> Result<(Vec<Option<S>>, Vec<u64>)> {
        if period == 0 || period > self.horizon() {
            return Err(range_err!("period {period} not covered by horizon {}", self.horizon()));
        }
        let mut pattern: Vec<Option<S>> = self.cells[..period as usize].to_vec();
        for (i, cell) in self.cells.iter().enumerate() {
            let r = i % period as usize;
            if *cell != pattern[r] {
                return Err(Error::Unsupported(format!(
                    "cells {r} and {i} differ, the sequence is not {period}-periodic with holes"
                )));
            }
        }
        let holes = pattern.iter_mut().enumerate().filter(|(_, c)| c.is_none()).map(|(i, _)| i as u64).collect();
        Ok((pattern, holes))
    }
}

impl PartialSequence<u8> {
    pub fn skeleton(&self, period: u64) -> Result<ToeplitzSkeleton> {
        let (cells, hole_residues) = self.skeleton_cells(period)?;
        Ok(ToeplitzSkeleton { period, cells, hole_residues })
    }
}

impl BitSequence for PartialSequence<u8> {
    fn bit(&self, n: u64) -> Option<u8> {
        self.get(n)
    }
}

/// Applies `steps` in order to an empty sequence over `{0, 1}` on `[0, horizon)`.
pub fn toeplitz_build(steps: &[FillStep<u8>], horizon: u64, mode: FillMode) -> Result<PartialSequence<u8>> {
    let mut seq = PartialSequence::new(vec![0, 1], horizon)?;
    for &step in steps {
        seq.fill(mode, step)?;
    }
    Ok(seq)
}

/// The first `stages` steps of the Thue-Toeplitz construction: at each stage
/// every second unfilled place is filled, alternately with 1 and 0.
pub fn thue_toeplitz_steps(stages: u32) -> Vec<FillStep<u8>> {
    (0..stages).map(|j| FillStep { start: 0, step: 2, symbol: if j % 2 == 0 { 1 } else { 0 } }).collect()
}

pub fn thue_toeplitz_partial(stages: u32, horizon: u64) -> Result<PartialSequence<u8>> {
    toeplitz_build(&thue_toeplitz_steps(stages), horizon, FillMode::EveryKthHole)
}

/// One period of a Toeplitz sequence at some construction stage, with the
/// residues that are still unfilled.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ToeplitzSkeleton {
    pub period: u64,
    #[serde(skip)]
    pub cells: Vec<Option<u8>>,
    pub hole_residues: Vec<u64>,
}

impl ToeplitzSkeleton {
    /// Whether position `n` of the full sequence is unfilled at this stage.
    pub fn is_hole(&self, n: u64) -> bool {
        self.cells[(n % self.period) as usize].is_none()
    }

    /// The filled word before the first hole, `B_n` in `B_n ? B_n ? ...`.
    pub fn leading_block(&self) -> Block {
        Block::new(self.cells.iter().map_while(|c| *c).collect()).expect("bits")
    }

    /// The pattern with `?` at holes.
    pub fn pattern(&self) -> String {
        self.cells.iter().map(|c| c.map_or('?', |b| (b'0' + b) as char)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sequences::accessor::{thue_toeplitz_bit, ThueToeplitz};

    #[test]
    fn three_stage_build_matches_xor_formula() {
        let seq = thue_toeplitz_partial(3, 16).unwrap();
        let text: String = seq.cells().iter().map(|c| c.map_or('?', |b| (b'0' + b) as char)).collect();
        assert_eq!(text, "1011101?1011101?");
        for n in 0..16 {
            if let Some(b) = seq.get(n) {
                assert_eq!(b, thue_toeplitz_bit(n));
            }
        }
        assert_eq!(seq.fill_log().len(), 3);
    }

    #[test]
    fn constant_fill() {
        let seq = toeplitz_build(&[FillStep { start: 0, step: 1, symbol: 1 }], 20, FillMode::Absolute).unwrap();
        assert!(seq.cells().iter().all(|c| *c == Some(1)));
    }

    #[test]
    fn absolute_overwrite_rejected() {
        let steps = [FillStep { start: 0, step: 2, symbol: 0 }, FillStep { start: 2, step: 4, symbol: 1 }];
        assert!(matches!(toeplitz_build(&steps, 20, FillMode::Absolute), Err(Error::Construction(_))));
        let ok = [FillStep { start: 0, step: 2, symbol: 0 }, FillStep { start: 1, step: 4, symbol: 1 }];
        let seq = toeplitz_build(&ok, 20, FillMode::Absolute).unwrap();
        assert_eq!(seq.holes().collect::<Vec<_>>(), vec![3, 7, 11, 15, 19]);
    }

    #[test]
    fn bad_steps() {
        assert!(toeplitz_build(&[FillStep { start: 0, step: 0, symbol: 0 }], 5, FillMode::Absolute).is_err());
        assert!(toeplitz_build(&[FillStep { start: 0, step: 1, symbol: 2 }], 5, FillMode::Absolute).is_err());
    }

    #[test]
    fn stage_pattern_has_block_of_length_two_to_n_minus_one() {
        for n in 1..=10u32 {
            let sk = ThueToeplitz.toeplitz_skeleton(n).unwrap();
            assert_eq!(sk.period, 1 << n);
            assert_eq!(sk.hole_residues, vec![(1u64 << n) - 1]);
            let b = sk.leading_block();
            assert_eq!(b.len(), (1 << n) - 1);
            assert!((0..b.len() as u64).all(|i| b.bits()[i as usize] == thue_toeplitz_bit(i)));
        }
        assert_eq!(ThueToeplitz.toeplitz_skeleton(4).unwrap().pattern(), "101110101011101?");
    }

    #[test]
    fn non_periodic_skeleton_rejected() {
        let seq = toeplitz_build(&[FillStep { start: 0, step: 3, symbol: 1 }], 12, FillMode::Absolute).unwrap();
        assert!(seq.skeleton(2).is_err());
        assert_eq!(seq.skeleton(3).unwrap().hole_residues, vec![1, 2]);
    }
}
