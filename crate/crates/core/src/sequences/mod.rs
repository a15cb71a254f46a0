//! Generators for generalized Morse, Kakutani, Toeplitz and counterexample
//! sequences, all read through index accessors.

mod accessor;
mod block;
mod counterexample;
mod morse;
mod toeplitz;

pub use accessor::{
    s_e_bit, thue_morse_bit, thue_toeplitz_bit, window, BitSequence, DigitSet, SESequence, ThueMorse,
    ThueToeplitz,
};
pub use block::{block_product, complement, Block};
pub use counterexample::{build_counterexample, CounterexampleSequence, CounterexampleSummary, DivisibilityChain};
pub use morse::{kakutani_spec_from_e, morse_prefix, MorseSequence, MorseSpec, RunLayout, RunLength};
pub use toeplitz::{
    thue_toeplitz_partial, thue_toeplitz_steps, toeplitz_build, FillMode, FillStep, PartialSequence,
    ToeplitzSkeleton,
};
