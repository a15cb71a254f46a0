//! A non-regular Toeplitz sequence over `{-1, 0, 1}` correlating with μ.
//!
//! Given an increasing divisibility chain `a_1 | a_2 | ...` with
//! `ρ = Σ 1/a_n ≤ 1/4`, positions are scanned in increasing order. A position
//! `n` not yet covered becomes an *initial*: it opens the progression
//! `A_n = {n + k a_{n+1}}` and every member of it carries `μ(n)`.

use num_bigint::BigInt;
use serde::Serialize;

use crate::arith::{ratio, ExactRational, MoebiusTable};
use crate::error::{range_err, Error, Result};

/// The chain `a_1 | a_2 | ...`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum DivisibilityChain {
    /// `a_n = base^n`.
    Powers { base: u64 },
    /// Listed terms, then each further term is the previous one times `ratio`.
    Custom { prefix: Vec<u64>, ratio: u64 },
}

impl DivisibilityChain {
    pub fn powers(base: u64) -> Result<Self> {
        let chain = DivisibilityChain::Powers { base };
        chain.validate()?;
        Ok(chain)
    }

    pub fn custom(prefix: Vec<u64>, ratio: u64) -> Result<Self> {
        let chain = DivisibilityChain::Custom { prefix, ratio };
        chain.validate()?;
        Ok(chain)
    }

    fn validate(&self) -> Result<()> {
        match self {
            DivisibilityChain::Powers { base } => {
                if *base < 2 {
                    return Err(Error::Config(format!("chain base {base} must be >= 2")));
                }
            }
            DivisibilityChain::Custom { prefix, ratio } => {
                if prefix.is_empty() || prefix[0] < 2 {
                    return Err(Error::Config("custom chain needs a first term >= 2".into()));
                }
                for w in prefix.windows(2) {
                    if w[1] <= w[0] || w[1] % w[0] != 0 {
                        return Err(Error::Config(format!("{} does not properly divide {}", w[0], w[1])));
                    }
                }
                if *ratio < 2 {
                    return Err(Error::Config(format!("chain ratio {ratio} must be >= 2")));
                }
            }
        }
        if self.rho() > ratio(1, 4) {
            return Err(Error::Config(format!("ρ = {} exceeds 1/4", self.rho())));
        }
        Ok(())
    }

    /// `a_n` for `n >= 1`, or `None` once it exceeds `u64`.
    pub fn term(&self, n: u64) -> Option<u64> {
        assert!(n >= 1, "chain terms are numbered from 1");
        match self {
            DivisibilityChain::Powers { base } => base.checked_pow(u32::try_from(n).ok()?),
            DivisibilityChain::Custom { prefix, ratio } => {
                let len = prefix.len() as u64;
                if n <= len {
                    Some(prefix[(n - 1) as usize])
                } else {
                    let extra = u32::try_from(n - len).ok()?;
                    prefix[prefix.len() - 1].checked_mul(ratio.checked_pow(extra)?)
                }
            }
        }
    }

    /// `ρ = Σ_{n ≥ 1} 1/a_n`, exactly.
    pub fn rho(&self) -> ExactRational {
        match self {
            DivisibilityChain::Powers { base } => ratio(1, *base as i64 - 1),
            DivisibilityChain::Custom { prefix, ratio: r } => {
                let head: ExactRational = prefix
                    .iter()
                    .map(|&a| ExactRational::new(1, BigInt::from(a)).expect("nonzero"))
                    .sum();
                let last = BigInt::from(prefix[prefix.len() - 1]);
                let tail = ExactRational::new(1, last * BigInt::from(r - 1)).expect("nonzero");
                head + tail
            }
        }
    }
}

/// The sequence `z` on `[0, N]` together with its progression structure.
#[derive(Debug, Clone)]
pub struct CounterexampleSequence {
    chain: DivisibilityChain,
    values: Vec<i8>,
    initial_of: Vec<u32>,
    initials: Vec<u64>,
}

/// Builds `z(0..=N)`. `mu` must cover `[0, N]`.
pub fn build_counterexample(chain: &DivisibilityChain, n: u64, mu: &MoebiusTable) -> Result<CounterexampleSequence> {
    chain.validate()?;
    mu.ensure_covers(n)?;
    if n >= u32::MAX as u64 {
        return Err(range_err!("horizon {n} too large"));
    }
    const UNSET: u32 = u32::MAX;
    let len = n as usize + 1;
    let mut initial_of = vec![UNSET; len];
    let mut initials = Vec::new();
    for m in 0..len {
        if initial_of[m] != UNSET {
            continue;
        }
        initials.push(m as u64);
        let step = chain.term(m as u64 + 1).map_or(usize::MAX, |a| usize::try_from(a).unwrap_or(usize::MAX));
        let mut i = m;
        loop {
            if initial_of[i] != UNSET {
                return Err(Error::Construction(format!(
                    "progression of initial {m} meets the progression of {} at {i}",
                    initial_of[i]
                )));
            }
            initial_of[i] = m as u32;
            match i.checked_add(step) {
                Some(next) if next < len => i = next,
                _ => break,
            }
        }
    }
    let values = initial_of.iter().map(|&m| mu.mu(m as u64)).collect();
    Ok(CounterexampleSequence { chain: chain.clone(), values, initial_of, initials })
}

impl CounterexampleSequence {
    pub fn chain(&self) -> &DivisibilityChain {
        &self.chain
    }

    pub fn rho(&self) -> ExactRational {
        self.chain.rho()
    }

    /// Largest index covered.
    pub fn horizon(&self) -> u64 {
        (self.values.len() - 1) as u64
    }

    pub fn z(&self, n: u64) -> Option<i8> {
        self.values.get(n as usize).copied()
    }

    pub fn values(&self) -> &[i8] {
        &self.values
    }

    pub fn initial_of(&self, n: u64) -> Option<u64> {
        self.initial_of.get(n as usize).map(|&m| m as u64)
    }

    pub fn is_initial(&self, n: u64) -> bool {
        self.initial_of(n) == Some(n)
    }

    pub fn initials(&self) -> &[u64] {
        &self.initials
    }

    /// Members of `A_m ∩ [0, N]` for an initial `m`.
    pub fn progression(&self, m: u64) -> Result<Vec<u64>> {
        if !self.is_initial(m) {
            return Err(range_err!("{m} is not an initial within the horizon"));
        }
        let step = self.chain.term(m + 1).unwrap_or(u64::MAX);
        Ok(std::iter::successors(Some(m), |&i| i.checked_add(step).filter(|&j| j <= self.horizon())).collect())
    }

    /// Number of non-initials in `[1, n]`.
    pub fn non_initial_count(&self, n: u64) -> Result<u64> {
        if n > self.horizon() {
            return Err(range_err!("{n} beyond horizon {}", self.horizon()));
        }
        Ok((1..=n).filter(|&k| !self.is_initial(k)).count() as u64)
    }

    /// Re-derives the progression structure from the assignment: every
    /// position belongs to the progression of its initial, progressions are
    /// pairwise disjoint, and initials are exactly the positions not covered
    /// by any earlier progression.
    pub fn verify_structure(&self, mu: &MoebiusTable) -> Result<()> {
        let mut seen = vec![false; self.values.len()];
        for &m in &self.initials {
            for i in self.progression(m)? {
                if seen[i as usize] {
                    return Err(Error::Construction(format!("{i} lies in two progressions")));
                }
                seen[i as usize] = true;
                if self.initial_of(i) != Some(m) {
                    return Err(Error::Construction(format!("{i} is in A_{m} but assigned elsewhere")));
                }
                if self.values[i as usize] != mu.get(m)? {
                    return Err(Error::Construction(format!("z({i}) != μ({m})")));
                }
            }
        }
        if let Some(i) = seen.iter().position(|&s| !s) {
            return Err(Error::Construction(format!("{i} is covered by no progression")));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CounterexampleSummary {
    pub horizon: u64,
    pub rho: ExactRational,
    pub initials: u64,
}

impl CounterexampleSequence {
    pub fn summary(&self) -> CounterexampleSummary {
        CounterexampleSummary { horizon: self.horizon(), rho: self.rho(), initials: self.initials.len() as u64 }
    }
}
