use std::fmt;
use std::str::FromStr;

use crate::error::{domain, Error, Result};

/// A finite word over `{0, 1}`.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Block(Vec<u8>);

impl Block {
    pub fn new(bits: Vec<u8>) -> Result<Self> {
        if let Some(b) = bits.iter().find(|&&b| b > 1) {
            return Err(domain!("block symbol {b} is not a bit"));
        }
        Ok(Self(bits))
    }

    pub fn bits(&self) -> &[u8] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Interchange of 0s and 1s.
    pub fn complement(&self) -> Block {
        Block(self.0.iter().map(|b| b ^ 1).collect())
    }

    /// `B × C = B^{C(0)} B^{C(1)} ... B^{C(ℓ-1)}` where `B^0 = B` and `B^1`
    /// is the complement.
    pub fn product(&self, c: &Block) -> Result<Block> {
        if self.is_empty() || c.is_empty() {
            return Err(domain!("block product of an empty block"));
        }
        let mut out = Vec::with_capacity(self.len() * c.len());
        for &flip in &c.0 {
            out.extend(self.0.iter().map(|b| b ^ flip));
        }
        Ok(Block(out))
    }

    pub fn into_bits(self) -> Vec<u8> {
        self.0
    }
}

pub fn block_product(b: &Block, c: &Block) -> Result<Block> {
    b.product(c)
}

pub fn complement(b: &Block) -> Block {
    b.complement()
}

impl fmt::Display for Block {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in &self.0 {
            write!(f, "{b}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Block {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Block({self})")
    }
}

impl FromStr for Block {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        s.trim()
            .chars()
            .map(|ch| match ch {
                '0' => Ok(0),
                '1' => Ok(1),
                _ => Err(Error::Parse(format!("block {s:?} contains {ch:?}"))),
            })
            .collect::<Result<Vec<u8>>>()
            .map(Block)
    }
}
