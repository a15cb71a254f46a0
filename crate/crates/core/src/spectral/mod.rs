//! Exact Fourier coefficients of the Thue-Morse spectral measure and
//! empirical correlation estimators for generalized Morse sequences.

mod correlation;
mod sigma;

pub use correlation::{
    correlation_sum, empirical_correlation, stabilization_check, tm_correlation, CorrelationReport,
    StabilizationPoint,
};
pub use sigma::{
    disjointness_witness, sigma_hat, sigma_hat_closed, tm_equivalent, valuation_report, DisjointnessWitness,
    SigmaCache, ValuationReport, DEFAULT_WITNESS_BOUND,
};
