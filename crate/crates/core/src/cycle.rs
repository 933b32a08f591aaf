//! The solution space `D = X ∪ X0`: two switching periodic cycles of the
//! inclusion `x' ∈ {f1(x), f2(x)}` on the segment between the nodes.
//!
//! Both cycles start at `b0` on the `f2` leg (phase 0). The `X` cycle runs
//! `b0 → b2` under `f2` and `b2 → b0` under `f1`; the `X0` cycle turns at
//! `b1` instead. Every solution is identified by its family and a phase in
//! `[0, period)`.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::linear_flow::{FlowError, Point2, StableNodeField};

/// Coordinate tolerance for image membership and phase inversion.
pub const COORD_TOL: f64 = 1e-12;
/// Phase tolerance for deciding equality of two solutions.
pub const PHASE_TOL: f64 = 1e-12;
/// Maximum admitted `|tau0 - tau/2|` for a symmetric configuration.
pub const PERIOD_TOL: f64 = 1e-12;

const GEOMETRY_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Family {
    X,
    X0,
}

impl Family {
    pub const ALL: [Family; 2] = [Family::X, Family::X0];
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::X => "X",
            Family::X0 => "X0",
        })
    }
}

/// Which solutions make up the space. `SingleCycle` drops `X0` and serves as
/// a contrast fixture: a minimal, equicontinuous system on one cycle.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Space {
    #[default]
    Full,
    SingleCycle,
}

impl Space {
    pub fn families(self) -> &'static [Family] {
        match self {
            Space::Full => &Family::ALL,
            Space::SingleCycle => &Family::ALL[..1],
        }
    }

    pub fn contains(self, family: Family) -> bool {
        self.families().contains(&family)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GeometryPoint {
    B0,
    B1,
    B2,
}

impl fmt::Display for GeometryPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            GeometryPoint::B0 => "b0",
            GeometryPoint::B1 => "b1",
            GeometryPoint::B2 => "b2",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Error)]
pub enum GeometryViolation {
    #[error("the two nodes coincide")]
    CoincidentNodes,
    #[error("{0} is not on the line through the nodes")]
    NotCollinear(GeometryPoint),
    #[error("points must be ordered node1 < b0 < b1 < b2 < node2 along the segment")]
    OutOfOrder,
    #[error("b1 must bisect [b0, b2]: |b0 b1| = {first}, |b1 b2| = {second}")]
    UnequalHalves { first: f64, second: f64 },
}

impl GeometryViolation {
    /// The geometry key most directly responsible for the violation.
    pub fn key(&self) -> &'static str {
        match self {
            GeometryViolation::CoincidentNodes => "node2",
            GeometryViolation::NotCollinear(GeometryPoint::B0) => "b0",
            GeometryViolation::NotCollinear(GeometryPoint::B1) => "b1",
            GeometryViolation::NotCollinear(GeometryPoint::B2) => "b2",
            GeometryViolation::OutOfOrder => "b0",
            GeometryViolation::UnequalHalves { .. } => "b1",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Error)]
pub enum SpecError {
    #[error("invalid geometry: {0}")]
    GeometryInvalid(#[from] GeometryViolation),
    #[error("period mismatch: tau0 = {tau0} but tau / 2 = {}", tau / 2.0)]
    PeriodMismatch { tau: f64, tau0: f64 },
    #[error(transparent)]
    Flow(#[from] FlowError),
}

/// A point of `D`: a family tag and a phase in `[0, period(family))`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Solution {
    family: Family,
    phase: f64,
}

impl Solution {
    pub fn family(&self) -> Family {
        self.family
    }

    pub fn phase(&self) -> f64 {
        self.phase
    }
}

/// The full construction: both fields, the turning points and the derived
/// leg durations and periods.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CycleSpec {
    field1: StableNodeField,
    field2: StableNodeField,
    b0: Point2,
    b1: Point2,
    b2: Point2,
    leg_x2: f64,
    leg_x1: f64,
    leg_02: f64,
    leg_01: f64,
    tau: f64,
    tau0: f64,
    period_mismatch: bool,
}

impl Default for CycleSpec {
    /// Nodes at `(0,0)` and `(1,0)`, unit rate, `b = 0.3, 0.5, 0.7` on the axis.
    fn default() -> Self {
        let f1 = StableNodeField::new(Point2::raw(0.0, 0.0), 1.0).unwrap();
        let f2 = StableNodeField::new(Point2::raw(1.0, 0.0), 1.0).unwrap();
        CycleSpec::new(
            f1,
            f2,
            Point2::raw(0.3, 0.0),
            Point2::raw(0.5, 0.0),
            Point2::raw(0.7, 0.0),
        )
        .expect("default geometry is valid")
    }
}

impl CycleSpec {
    /// Builds and validates a configuration whose periods satisfy
    /// `tau0 = tau / 2`.
    pub fn new(
        field1: StableNodeField,
        field2: StableNodeField,
        b0: Point2,
        b1: Point2,
        b2: Point2,
    ) -> Result<Self, SpecError> {
        Self::build(field1, field2, b0, b1, b2, false)
    }

    /// Like [`CycleSpec::new`] but admits `tau0 != tau / 2`; the mismatch is
    /// recorded in [`CycleSpec::period_mismatch`].
    pub fn new_allow_asymmetric(
        field1: StableNodeField,
        field2: StableNodeField,
        b0: Point2,
        b1: Point2,
        b2: Point2,
    ) -> Result<Self, SpecError> {
        Self::build(field1, field2, b0, b1, b2, true)
    }

    fn build(
        field1: StableNodeField,
        field2: StableNodeField,
        b0: Point2,
        b1: Point2,
        b2: Point2,
        allow_asymmetric: bool,
    ) -> Result<Self, SpecError> {
        validate_geometry(field1.node(), field2.node(), b0, b1, b2)?;

        let leg_x2 = field2.hit_time(b0, b2)?;
        let leg_x1 = field1.hit_time(b2, b0)?;
        let leg_02 = field2.hit_time(b0, b1)?;
        let leg_01 = field1.hit_time(b1, b0)?;
        let tau = leg_x2 + leg_x1;
        let tau0 = leg_02 + leg_01;
        let period_mismatch = (tau0 - tau / 2.0).abs() > PERIOD_TOL;
        if period_mismatch && !allow_asymmetric {
            return Err(SpecError::PeriodMismatch { tau, tau0 });
        }
        Ok(CycleSpec {
            field1,
            field2,
            b0,
            b1,
            b2,
            leg_x2,
            leg_x1,
            leg_02,
            leg_01,
            tau,
            tau0,
            period_mismatch,
        })
    }

    pub fn field1(&self) -> &StableNodeField {
        &self.field1
    }

    pub fn field2(&self) -> &StableNodeField {
        &self.field2
    }

    pub fn b0(&self) -> Point2 {
        self.b0
    }

    pub fn b1(&self) -> Point2 {
        self.b1
    }

    pub fn b2(&self) -> Point2 {
        self.b2
    }

    pub fn tau(&self) -> f64 {
        self.tau
    }

    pub fn tau0(&self) -> f64 {
        self.tau0
    }

    /// True when the spec was admitted with `|tau0 - tau/2| > 1e-12`.
    pub fn period_mismatch(&self) -> bool {
        self.period_mismatch
    }

    pub fn period(&self, family: Family) -> f64 {
        match family {
            Family::X => self.tau,
            Family::X0 => self.tau0,
        }
    }

    /// Duration of the outgoing `f2` leg, from `b0` to the turning point.
    pub fn leg_out(&self, family: Family) -> f64 {
        match family {
            Family::X => self.leg_x2,
            Family::X0 => self.leg_02,
        }
    }

    /// Duration of the returning `f1` leg, from the turning point to `b0`.
    pub fn leg_back(&self, family: Family) -> f64 {
        match family {
            Family::X => self.leg_x1,
            Family::X0 => self.leg_01,
        }
    }

    /// The far turning point: `b2` for `X`, `b1` for `X0`.
    pub fn turning_point(&self, family: Family) -> Point2 {
        match family {
            Family::X => self.b2,
            Family::X0 => self.b1,
        }
    }

    /// Reduces a phase into `[0, period)`.
    pub fn normalize(&self, family: Family, phase: f64) -> f64 {
        let p = self.period(family);
        let u = phase.rem_euclid(p);
        if u >= p {
            0.0
        } else {
            u
        }
    }

    pub fn solution(&self, family: Family, phase: f64) -> Solution {
        Solution {
            family,
            phase: self.normalize(family, phase),
        }
    }

    /// Position on the cycle of `family` at the given phase.
    pub fn pos(&self, family: Family, phase: f64) -> Point2 {
        let u = self.normalize(family, phase);
        let out = self.leg_out(family);
        let back = self.leg_back(family);
        // phases within PHASE_TOL of a corner report the corner itself
        if (u - out).abs() <= PHASE_TOL {
            self.turning_point(family)
        } else if out + back - u <= PHASE_TOL {
            self.b0
        } else if u < out {
            self.field2.flow(u, self.b0)
        } else {
            self.field1.flow(u - out, self.turning_point(family))
        }
    }

    /// The value `x(t)` of a solution.
    pub fn eval(&self, sol: &Solution, t: f64) -> Point2 {
        self.pos(sol.family, sol.phase + t)
    }

    /// All phases at which the cycle of `family` passes through `p`.
    ///
    /// Interior points of the image yield two phases (outgoing leg first),
    /// the turning points one, and points off the image none.
    pub fn phases_through(&self, family: Family, p: Point2) -> Vec<f64> {
        let far = self.turning_point(family);
        let dir = far - self.b0;
        let len = dir.norm();
        let rel = p - self.b0;
        if rel.cross(dir).abs() / len > COORD_TOL {
            return Vec::new();
        }
        let along = rel.dot(dir) / len;
        if along < -COORD_TOL || along > len + COORD_TOL {
            return Vec::new();
        }
        if along <= COORD_TOL {
            return vec![0.0];
        }
        if along >= len - COORD_TOL {
            return vec![self.leg_out(family)];
        }
        // Radial legs: distances to each node shrink linearly along the segment.
        let r_out = self.b0.dist(self.field2.node());
        let r_back = far.dist(self.field1.node());
        let u_out = -(-along / r_out).ln_1p() / self.field2.rate();
        let u_back = -(-(len - along) / r_back).ln_1p() / self.field1.rate();
        vec![u_out, self.leg_out(family) + u_back]
    }

    /// Speed `|x'|` at the given phase; at a switching phase the post-switch
    /// field applies.
    pub fn speed(&self, family: Family, phase: f64) -> f64 {
        let u = self.normalize(family, phase);
        let p = self.pos(family, u);
        if u < self.leg_out(family) {
            self.field2.speed(p)
        } else {
            self.field1.speed(p)
        }
    }

    /// Supremum of the speed over the cycle.
    pub fn max_speed(&self, family: Family) -> f64 {
        let far = self.turning_point(family);
        self.field2.speed(self.b0).max(self.field1.speed(far))
    }

    /// Infimum of the speed over the cycle (approached at the leg ends).
    pub fn min_speed(&self, family: Family) -> f64 {
        let far = self.turning_point(family);
        self.field2.speed(far).min(self.field1.speed(self.b0))
    }

    /// Distance from `p` to the image segment `[b0, turning_point]` of a cycle.
    pub fn image_distance(&self, family: Family, p: Point2) -> f64 {
        segment_distance(p, self.b0, self.turning_point(family))
    }

    /// Equality of solutions, up to [`PHASE_TOL`] on the phase circle.
    pub fn same_solution(&self, a: &Solution, b: &Solution) -> bool {
        a.family == b.family && self.phase_gap(a.family, a.phase, b.phase) <= PHASE_TOL
    }

    /// Circular distance between two phases of the same family.
    pub fn phase_gap(&self, family: Family, a: f64, b: f64) -> f64 {
        let p = self.period(family);
        let d = self.normalize(family, a - b);
        d.min(p - d)
    }
}

/// Euclidean distance from `p` to the closed segment `[a, b]`.
pub fn segment_distance(p: Point2, a: Point2, b: Point2) -> f64 {
    let ab = b - a;
    let len2 = ab.dot(ab);
    if len2 == 0.0 {
        return p.dist(a);
    }
    let s = ((p - a).dot(ab) / len2).clamp(0.0, 1.0);
    p.dist(a + ab * s)
}

fn validate_geometry(
    node1: Point2,
    node2: Point2,
    b0: Point2,
    b1: Point2,
    b2: Point2,
) -> Result<(), GeometryViolation> {
    let axis = node2 - node1;
    let len = axis.norm();
    if len == 0.0 {
        return Err(GeometryViolation::CoincidentNodes);
    }
    let mut along = [0.0; 3];
    for (i, (name, b)) in [
        (GeometryPoint::B0, b0),
        (GeometryPoint::B1, b1),
        (GeometryPoint::B2, b2),
    ]
    .into_iter()
    .enumerate()
    {
        let rel = b - node1;
        if rel.cross(axis).abs() / len > GEOMETRY_TOL * len {
            return Err(GeometryViolation::NotCollinear(name));
        }
        along[i] = rel.dot(axis) / (len * len);
    }
    if !(0.0 < along[0] && along[0] < along[1] && along[1] < along[2] && along[2] < 1.0) {
        return Err(GeometryViolation::OutOfOrder);
    }
    let first = b0.dist(b1);
    let second = b1.dist(b2);
    if (first - second).abs() > GEOMETRY_TOL * b0.dist(b2).max(1.0) {
        return Err(GeometryViolation::UnequalHalves { first, second });
    }
    Ok(())
}
