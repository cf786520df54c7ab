//! Two-agent decentralized estimation over three strategy spaces.
//!
//! Two agents, `B` and `H`, each receive a noisy binary observation of an
//! environmental bit and must produce a joint XOR estimate of it without
//! communicating. Depending on the physical resources available to them,
//! their joint conditional action distribution lives in one of three nested
//! sets:
//!
//! * the local polytope (deterministic strategies plus passive common
//!   randomness), solved exactly in [`classical`];
//! * the quantum set (shared entangled state plus local projective
//!   measurements), evaluated by the kernel in [`quantum`] and optimized
//!   numerically in [`search`];
//! * the no-signalling polytope, solved exactly by vertex enumeration in
//!   [`nosignalling`].
//!
//! The [`problem`] module defines the parametric decision problem and the
//! expected-cost functional shared by all three. [`sweep`] drives parameter
//! sweeps over information quality and cost asymmetry and writes them as CSV.

// Index loops over {0,1} ranges mirror the subscript notation of the math.
#![allow(clippy::needless_range_loop)]

pub mod classical;
pub mod nosignalling;
pub mod problem;
pub mod quantum;
pub mod search;
pub mod sweep;

pub use problem::{cost, expected_cost, joint_prior, DecisionProblem, JointPrior, StrategyTable};

use thiserror::Error;

/// Crate-wide error type.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid decision problem: {0}")]
    InvalidProblem(String),
    #[error("invalid strategy table: {0}")]
    InvalidStrategyTable(String),
    #[error("invalid mixture: {0}")]
    InvalidMixture(String),
    #[error("projector constraint violated: {0}")]
    ConstraintViolation(String),
    #[error("invalid quantum strategy: {0}")]
    InvalidQuantumStrategy(String),
    #[error("numerical inconsistency: {0}")]
    NumericalInconsistency(String),
    #[error("degenerate measurement collapse: branch probability {0} below threshold")]
    DegenerateCollapse(f64),
    #[error("invalid sweep spec: {0}")]
    InvalidSpec(String),
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
    #[error("malformed csv: {0}")]
    MalformedCsv(String),
}

pub type Result<T> = std::result::Result<T, Error>;
