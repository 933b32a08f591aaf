//! Switching periodic solutions of the planar differential inclusion
//! `x' ∈ {f1(x), f2(x)}`, viewed as a Hausdorff gauge space under the
//! time-shift action of `(ℝ, +)`.
//!
//! The crate is organised bottom-up:
//!
//! * [`linear_flow`]: closed-form radial stable-node fields and their flows.
//! * [`cycle`]: the two switching cycles `X` and `X0` and exact evaluation.
//! * [`gauge`]: the pseudometrics `d_t`, subbasic balls and basis entourages.
//! * [`action`]: the shift action, stabilizers and syndeticity checks.
//! * [`checkers`]: witness constructions and falsification searches for
//!   transitivity, non-minimality, dense periodicity, non-sensitivity and
//!   non-equicontinuity.

pub mod action;
pub mod checkers;
pub mod cycle;
pub mod gauge;
pub mod linear_flow;

pub use action::{act, stabilizer_generator, SyndeticWitness};
pub use checkers::{
    verify_all, CheckConfig, Param, Property, Status, Value, Witness, WitnessReport,
};
pub use cycle::{CycleSpec, Family, GeometryViolation, Solution, Space, SpecError};
pub use gauge::{gauge_dist, GaugeBall, GaugeConstraint, GaugeEntourage, GaugeError};
pub use linear_flow::{FlowError, Point2, StableNodeField};
