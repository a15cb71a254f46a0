//! Möbius-weighted averages along orbits of the sequence families.

mod correlation;
mod cylinder;
mod orthogonality;
mod rows;

pub use correlation::{counterexample_chain, counterexample_correlation, CounterexampleChain, CounterexampleCorrelation};
pub use cylinder::{weighted_sum, weighted_total, CylinderFunction, CylinderValue, MAX_CYLINDER_LENGTH};
pub use orthogonality::{
    default_checkpoints, eventually_periodic_sum, orthogonality_series, sign_function, tm_orthogonality, Checkpoint,
    OrthogonalitySeries,
};
pub use rows::{row_decomposition, Row, RowDecomposition};
