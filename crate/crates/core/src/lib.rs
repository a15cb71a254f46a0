//! Exact Fourier coefficients of the Thue-Morse spectral measure, the 2-adic
//! structure behind disjointness of its powers, and Möbius-correlation
//! experiments for Morse, Toeplitz and non-regular Toeplitz sequences.

pub mod arith;
pub mod error;
pub mod experiments;
pub mod report;
pub mod sequences;
pub mod spectral;

pub use error::{Error, Result};
