//! Exact rationals, 2-adic valuations, odd chains and the Möbius sieve.

mod moebius;
mod rational;
mod valuation;

pub use moebius::{moebius_sieve, moebius_sieve_within, squarefree_count, MoebiusTable, DEFAULT_SIEVE_LIMIT};
pub use rational::{ratio, ExactRational};
pub use valuation::{find_odd_t, odd_chain, v2, OddChain};
