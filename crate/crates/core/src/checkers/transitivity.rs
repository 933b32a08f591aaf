use rand::Rng;
use serde::{Deserialize, Serialize};

use super::report::{Property, Status, Value, Witness, WitnessReport};
use super::sampling::{random_solution, rng_from_seed};
use super::{centered, matching_x_solutions};
use crate::action::act;
use crate::cycle::{CycleSpec, Family, Solution, Space};
use crate::gauge::{gauge_dist, GaugeBall};

/// Which branch of the transitivity construction produced a witness.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ProofCase {
    /// (a) both centers in the same family: align their phases.
    SameFamily,
    /// (b) an `X` center moved into a ball around an `X0` center.
    IntoX0,
    /// (c) an `X0` center's ball pulled back from a ball around an `X` center.
    FromX0,
    /// (d) both balls meet both families: reduce to (a) through `X` members.
    Mixed,
}

impl ProofCase {
    pub const ALL: [ProofCase; 4] = [
        ProofCase::SameFamily,
        ProofCase::IntoX0,
        ProofCase::FromX0,
        ProofCase::Mixed,
    ];

    fn name(self) -> &'static str {
        match self {
            ProofCase::SameFamily => "a_same_family",
            ProofCase::IntoX0 => "b_into_x0",
            ProofCase::FromX0 => "c_from_x0",
            ProofCase::Mixed => "d_mixed",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TransitivityWitness {
    pub case: ProofCase,
    /// Group element with `T(s, mover) ∈ Y2`.
    pub s: f64,
    /// A member of `Y1`.
    pub mover: Solution,
    /// `d_{t1}(mover, center1)`.
    pub mover_distance: f64,
    /// `d_{t2}(T(s, mover), center2)`.
    pub residual: f64,
}

impl TransitivityWitness {
    pub fn is_valid(&self, y1: &GaugeBall, y2: &GaugeBall) -> bool {
        self.mover_distance < y1.radius() && self.residual < y2.radius()
    }
}

fn other(f: Family) -> Family {
    match f {
        Family::X => Family::X0,
        Family::X0 => Family::X,
    }
}

/// An `X` member of `ball`: its center if the center is in `X`, otherwise
/// the `X` solution through the center's position at the ball's gauge time
/// whose phase is closest to `near`.
fn x_member(spec: &CycleSpec, ball: &GaugeBall, near: f64) -> Solution {
    let c = ball.center();
    if c.family() == Family::X {
        return c;
    }
    closest(spec, matching_x_solutions(spec, &c, ball.t()), near)
}

fn closest(spec: &CycleSpec, candidates: Vec<Solution>, near: f64) -> Solution {
    candidates
        .into_iter()
        .min_by(|a, b| {
            let da = spec.phase_gap(Family::X, a.phase(), near);
            let db = spec.phase_gap(Family::X, b.phase(), near);
            da.total_cmp(&db)
        })
        .expect("every X0 position lies on the X cycle")
}

/// Constructs `s` and `mover ∈ Y1` with `T(s, mover) ∈ Y2`.
pub fn transitivity_witness(
    spec: &CycleSpec,
    space: Space,
    y1: &GaugeBall,
    y2: &GaugeBall,
) -> TransitivityWitness {
    let c1 = y1.center();
    let c2 = y2.center();
    let tau = spec.tau();
    let mixed = |b: &GaugeBall| b.meets_family(spec, space, other(b.center().family()));

    let (case, s, mover) = if c1.family() == c2.family() {
        let p = spec.period(c1.family());
        (
            ProofCase::SameFamily,
            centered(c2.phase() - c1.phase(), p),
            c1,
        )
    } else if mixed(y1) && mixed(y2) {
        let m1 = x_member(spec, y1, c1.phase());
        let m2 = x_member(spec, y2, m1.phase());
        (ProofCase::Mixed, centered(m2.phase() - m1.phase(), tau), m1)
    } else if c1.family() == Family::X {
        // y1(t2 + s) = y2(t2)
        let target = closest(spec, matching_x_solutions(spec, &c2, y2.t()), c1.phase());
        (
            ProofCase::IntoX0,
            centered(target.phase() - c1.phase(), tau),
            c1,
        )
    } else {
        // z = T(k, y2) agrees with y1 at t1, so z ∈ Y1 and T(-k, z) = y2
        let z = closest(spec, matching_x_solutions(spec, &c1, y1.t()), c2.phase());
        let k = centered(z.phase() - c2.phase(), tau);
        (ProofCase::FromX0, -k, z)
    };

    let moved = act(spec, s, &mover);
    TransitivityWitness {
        case,
        s,
        mover,
        mover_distance: gauge_dist(spec, y1.t(), &mover, &c1),
        residual: gauge_dist(spec, y2.t(), &moved, &c2),
    }
}

fn random_ball<R: Rng>(
    rng: &mut R,
    spec: &CycleSpec,
    space: Space,
    family: Option<Family>,
) -> GaugeBall {
    let center = match family {
        Some(f) => spec.solution(f, rng.gen_range(0.0..spec.period(f))),
        None => random_solution(rng, spec, space),
    };
    let t = rng.gen_range(-spec.tau()..2.0 * spec.tau());
    let radius = 10f64.powf(rng.gen_range(-3.0..-0.7));
    GaugeBall::new(center, t, radius).expect("finite gauge and positive radius")
}

/// Draws a ball pair aimed at `case`; the construction decides the case it
/// actually takes.
fn ball_pair<R: Rng>(
    rng: &mut R,
    spec: &CycleSpec,
    space: Space,
    case: ProofCase,
) -> (GaugeBall, GaugeBall) {
    if space == Space::SingleCycle {
        return (
            random_ball(rng, spec, space, None),
            random_ball(rng, spec, space, None),
        );
    }
    let mixed = |b: &GaugeBall| b.meets_family(spec, space, other(b.center().family()));
    loop {
        let pair = match case {
            ProofCase::SameFamily => {
                let f = if rng.gen::<bool>() {
                    Family::X
                } else {
                    Family::X0
                };
                (
                    random_ball(rng, spec, space, Some(f)),
                    random_ball(rng, spec, space, Some(f)),
                )
            }
            ProofCase::IntoX0 => (
                random_ball(rng, spec, space, Some(Family::X)),
                random_ball(rng, spec, space, Some(Family::X0)),
            ),
            ProofCase::FromX0 => (
                random_ball(rng, spec, space, Some(Family::X0)),
                random_ball(rng, spec, space, Some(Family::X)),
            ),
            ProofCase::Mixed => {
                if rng.gen::<bool>() {
                    (
                        random_ball(rng, spec, space, Some(Family::X)),
                        random_ball(rng, spec, space, Some(Family::X0)),
                    )
                } else {
                    (
                        random_ball(rng, spec, space, Some(Family::X0)),
                        random_ball(rng, spec, space, Some(Family::X)),
                    )
                }
            }
        };
        let both_mixed = mixed(&pair.0) && mixed(&pair.1);
        let fits = match case {
            ProofCase::SameFamily => true,
            ProofCase::IntoX0 | ProofCase::FromX0 => !both_mixed,
            ProofCase::Mixed => both_mixed,
        };
        if fits {
            return pair;
        }
    }
}

fn witness_record(y1: &GaugeBall, y2: &GaugeBall, w: &TransitivityWitness) -> Witness {
    Witness::new(w.case.name())
        .with("y1_center", Value::Solution(y1.center()))
        .with("y1_t", Value::Gauge(y1.t()))
        .with("y1_radius", Value::Distance(y1.radius()))
        .with("y2_center", Value::Solution(y2.center()))
        .with("y2_t", Value::Gauge(y2.t()))
        .with("y2_radius", Value::Distance(y2.radius()))
        .with("s", Value::Group(w.s))
        .with("mover", Value::Solution(w.mover))
        .with("residual", Value::Distance(w.residual))
}

/// [`transitivity_witness`] for one explicit pair of balls, as a report.
pub fn transitivity_pair_report(
    spec: &CycleSpec,
    space: Space,
    y1: &GaugeBall,
    y2: &GaugeBall,
) -> WitnessReport {
    let w = transitivity_witness(spec, space, y1, y2);
    let status = if w.is_valid(y1, y2) {
        Status::Verified
    } else {
        Status::Falsified
    };
    let mut report = WitnessReport::new(Property::Transitivity, status);
    report.witnesses.push(witness_record(y1, y2, &w));
    report.constant("s", w.s);
    report.constant("residual", w.residual);
    report.constant("mover_distance", w.mover_distance);
    report
}

/// Runs [`transitivity_witness`] on `n_pairs` random subbasic ball pairs,
/// cycling through the four construction cases.
pub fn transitivity_check(
    spec: &CycleSpec,
    space: Space,
    n_pairs: usize,
    witness_tol: f64,
    seed: u64,
) -> WitnessReport {
    let mut rng = rng_from_seed(seed);
    let mut counts = [0usize; 4];
    let mut first_of_case: [Option<Witness>; 4] = Default::default();
    let mut failures = Vec::new();
    let mut max_residual = 0.0f64;

    for i in 0..n_pairs {
        let aim = ProofCase::ALL[i % 4];
        let (y1, y2) = ball_pair(&mut rng, spec, space, aim);
        let w = transitivity_witness(spec, space, &y1, &y2);
        let idx = ProofCase::ALL.iter().position(|c| *c == w.case).unwrap();
        counts[idx] += 1;
        max_residual = max_residual.max(w.residual);

        let record = witness_record(&y1, &y2, &w);
        if !w.is_valid(&y1, &y2) || w.residual >= witness_tol {
            failures.push(record);
        } else if first_of_case[idx].is_none() {
            first_of_case[idx] = Some(record);
        }
    }

    let status = if failures.is_empty() {
        Status::Verified
    } else {
        Status::Falsified
    };
    let mut report = WitnessReport::new(Property::Transitivity, status);
    report.witnesses = if failures.is_empty() {
        first_of_case.into_iter().flatten().collect()
    } else {
        failures.into_iter().take(10).collect()
    };
    for (case, n) in ProofCase::ALL.iter().zip(counts) {
        report.constant(&format!("pairs_{}", case.name()), n as f64);
    }
    report.constant("max_residual", max_residual);
    report.sample("n_pairs", n_pairs);
    report.sample("witness_tol", witness_tol);
    report.sample("seed", seed);
    report
}
