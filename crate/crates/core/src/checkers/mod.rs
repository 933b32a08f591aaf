//! Computable versions of the five dynamical properties of the shift action:
//! constructive witnesses where a witness can be written down, bounded
//! searches where the claim is a negation, and measured constants where a
//! bound is only implicit.
//!
//! Every checker returns a [`WitnessReport`]; [`replay`] re-validates the
//! bindings of a report through the public operations.

use thiserror::Error;

use crate::cycle::{CycleSpec, Family, Solution};

mod equicontinuity;
mod minimality;
mod periodicity;
mod replay;
pub mod report;
pub(crate) mod sampling;
mod sensitivity;
mod transitivity;
mod verify;

pub use equicontinuity::{equicontinuity_falsifier, equicontinuity_sweep, EquicontinuitySearch};
pub use minimality::minimality_falsifier;
pub use periodicity::{dense_periodicity_check, density_probe_multi};
pub use replay::{replay, ReplayError};
pub use report::{Param, Property, Status, Value, Witness, WitnessReport};
pub use sensitivity::{expansion_constant, sensitivity_falsifier, SensitivitySearch};
pub use transitivity::{
    transitivity_check, transitivity_pair_report, transitivity_witness, ProofCase,
    TransitivityWitness,
};
pub use verify::{verify_all, CheckConfig};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum CheckError {
    #[error("witness point must lie strictly between b1 and b2: {0}")]
    BadWitnessPoint(String),
    #[error("not applicable: {0}")]
    NotApplicable(String),
    #[error("invalid checker input: {0}")]
    InvalidInput(String),
}

/// The `X` solutions passing through `target(t)` at time `t`, i.e. those with
/// `d_t(x, target) = 0`. Outgoing-leg match first.
pub fn matching_x_solutions(spec: &CycleSpec, target: &Solution, t: f64) -> Vec<Solution> {
    spec.phases_through(Family::X, spec.eval(target, t))
        .into_iter()
        .map(|u| spec.solution(Family::X, u - t))
        .collect()
}

/// Representative of `x` modulo `period` in `[-period/2, period/2]`.
pub(crate) fn centered(x: f64, period: f64) -> f64 {
    x - period * (x / period).round()
}
