//! Quantum strategy space: shared entangled states measured by per-agent
//! projective POVMs, with sequential sampling of correlated actions.

pub mod matrix;
pub mod sampling;
pub mod state;
pub mod strategy;

pub use matrix::ComplexMatrix;
pub use num_complex::Complex64;
pub use sampling::{empirical_table, sample_sequential, MeasurementOrder};
pub use state::{
    bell_state, projector_family, DensityMatrix, PovmElement, ProjectorParams, QUANTUM_TOL,
};
pub use strategy::{
    advantage_strategy, advantage_table, direct_sum_mix, embed_deterministic, strategy_table,
    validate_quantum_strategy, QuantumStrategy,
};
