use num_traits::ToPrimitive;
use serde::Serialize;

use crate::arith::{ExactRational, MoebiusTable};
use crate::error::{domain, range_err, Result};
use crate::report::Tabular;
use crate::sequences::CounterexampleSequence;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CounterexampleCorrelation {
    #[serde(rename = "N")]
    pub n: u64,
    /// `Σ_{k=1}^{N} z(k) μ(k)`.
    pub sum: i64,
    pub average: ExactRational,
    /// `Σ_{k=1}^{N} μ(k)²`.
    pub squarefree: u64,
    pub non_initials: u64,
    /// `sum ≥ squarefree - 2Nρ`.
    pub lower_bound_ok: bool,
    /// `non_initials < Nρ`.
    pub non_initial_ok: bool,
}

impl Tabular for CounterexampleCorrelation {
    fn header() -> Vec<&'static str> {
        vec!["N", "sum", "average", "squarefree", "non_initials", "lower_bound_ok", "non_initial_ok"]
    }
    fn row(&self) -> Vec<String> {
        vec![
            self.n.to_string(),
            self.sum.to_string(),
            self.average.to_string(),
            self.squarefree.to_string(),
            self.non_initials.to_string(),
            self.lower_bound_ok.to_string(),
            self.non_initial_ok.to_string(),
        ]
    }
}

/// Every `N` in `[1, horizon]` checked; checkpoints kept for reporting.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CounterexampleChain {
    pub rho: ExactRational,
    pub checked_up_to: u64,
    /// First `N` violating the lower bound, if any.
    pub first_bound_failure: Option<u64>,
    /// First `N` with too many non-initials, if any.
    pub first_non_initial_failure: Option<u64>,
    pub checkpoints: Vec<CounterexampleCorrelation>,
}

impl CounterexampleChain {
    pub fn all_ok(&self) -> bool {
        self.first_bound_failure.is_none() && self.first_non_initial_failure.is_none()
    }
}

fn rho_parts(cs: &CounterexampleSequence) -> Result<(i128, i128)> {
    let rho = cs.rho();
    let p = rho.numer().to_i128().ok_or_else(|| range_err!("ρ numerator too large"))?;
    let q = rho.denom().to_i128().ok_or_else(|| range_err!("ρ denominator too large"))?;
    Ok((p, q))
}

/// Runs `k = 1..=max(checkpoints)` once, checking both inequalities at every
/// `N` and recording the state at each checkpoint.
pub fn counterexample_chain(
    cs: &CounterexampleSequence,
    mu: &MoebiusTable,
    checkpoints: &[u64],
) -> Result<CounterexampleChain> {
    if checkpoints.is_empty() || checkpoints[0] == 0 || checkpoints.windows(2).any(|p| p[1] <= p[0]) {
        return Err(domain!("checkpoints must be positive and strictly increasing"));
    }
    let last = *checkpoints.last().unwrap();
    if last > cs.horizon() {
        return Err(range_err!("N = {last} beyond the sequence horizon {}", cs.horizon()));
    }
    mu.ensure_covers(last)?;
    let (p, q) = rho_parts(cs)?;
    let mut sum = 0i64;
    let mut squarefree = 0u64;
    let mut non_initials = 0u64;
    let mut first_bound_failure = None;
    let mut first_non_initial_failure = None;
    let mut out = Vec::with_capacity(checkpoints.len());
    let mut next = checkpoints.iter().peekable();
    for k in 1..=last {
        let m = mu.mu(k);
        sum += cs.z(k).expect("within horizon") as i64 * m as i64;
        squarefree += (m != 0) as u64;
        non_initials += !cs.is_initial(k) as u64;
        let n = k as i128;
        // q·(sum - squarefree) + 2Np ≥ 0 and q·non_initials < Np.
        let bound_ok = q * (sum as i128 - squarefree as i128) + 2 * n * p >= 0;
        let non_initial_ok = q * (non_initials as i128) < n * p;
        if !bound_ok && first_bound_failure.is_none() {
            first_bound_failure = Some(k);
        }
        if !non_initial_ok && first_non_initial_failure.is_none() {
            first_non_initial_failure = Some(k);
        }
        if next.peek() == Some(&&k) {
            next.next();
            out.push(CounterexampleCorrelation {
                n: k,
                sum,
                average: ExactRational::new(sum, k)?,
                squarefree,
                non_initials,
                lower_bound_ok: bound_ok,
                non_initial_ok,
            });
        }
    }
    Ok(CounterexampleChain {
        rho: cs.rho(),
        checked_up_to: last,
        first_bound_failure,
        first_non_initial_failure,
        checkpoints: out,
    })
}

/// The state at a single `N`.
pub fn counterexample_correlation(
    cs: &CounterexampleSequence,
    mu: &MoebiusTable,
    n: u64,
) -> Result<CounterexampleCorrelation> {
    Ok(counterexample_chain(cs, mu, &[n])?.checkpoints.pop().expect("one checkpoint"))
}
