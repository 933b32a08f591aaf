//! The gauge structure on `D`: pseudometrics `d_t(x, y) = |x(t) - y(t)|`,
//! subbasic balls `B(y, d_t, ε)` and the finite-intersection basis
//! entourages `{(x, y) : d_{t_i}(x, y) < ε_i ∀i}` of the uniformity.

use rand::Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::checkers::report::{Property, Status, Value, Witness, WitnessReport};
use crate::checkers::sampling::{random_solution, rng_from_seed};
use crate::cycle::{CycleSpec, Family, Solution, Space};

#[derive(Debug, Clone, Copy, PartialEq, Error)]
pub enum GaugeError {
    #[error("gauge time must be finite, got {0}")]
    NonFiniteTime(f64),
    #[error("radius must be positive and finite, got {0}")]
    BadRadius(f64),
    #[error("an entourage needs at least one constraint")]
    EmptyEntourage,
}

/// `d_t(s1, s2)`.
pub fn gauge_dist(spec: &CycleSpec, t: f64, s1: &Solution, s2: &Solution) -> f64 {
    spec.eval(s1, t).dist(spec.eval(s2, t))
}

/// One gauge bound `d_t < eps`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GaugeConstraint {
    pub t: f64,
    pub eps: f64,
}

impl GaugeConstraint {
    pub fn new(t: f64, eps: f64) -> Result<Self, GaugeError> {
        if !t.is_finite() {
            return Err(GaugeError::NonFiniteTime(t));
        }
        if !(eps.is_finite() && eps > 0.0) {
            return Err(GaugeError::BadRadius(eps));
        }
        Ok(GaugeConstraint { t, eps })
    }

    pub fn holds(&self, spec: &CycleSpec, a: &Solution, b: &Solution) -> bool {
        gauge_dist(spec, self.t, a, b) < self.eps
    }
}

/// The open subbasic ball `B(center, d_t, radius)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GaugeBall {
    center: Solution,
    t: f64,
    radius: f64,
}

impl GaugeBall {
    pub fn new(center: Solution, t: f64, radius: f64) -> Result<Self, GaugeError> {
        let c = GaugeConstraint::new(t, radius)?;
        Ok(GaugeBall {
            center,
            t: c.t,
            radius: c.eps,
        })
    }

    pub fn center(&self) -> Solution {
        self.center
    }

    pub fn t(&self) -> f64 {
        self.t
    }

    pub fn radius(&self) -> f64 {
        self.radius
    }

    pub fn contains(&self, spec: &CycleSpec, s: &Solution) -> bool {
        gauge_dist(spec, self.t, &self.center, s) < self.radius
    }

    /// Whether the ball holds solutions of `family` within `space`.
    ///
    /// Every point of a cycle image is visited at every time by some member of
    /// that family, so this reduces to a point-to-segment distance.
    pub fn meets_family(&self, spec: &CycleSpec, space: Space, family: Family) -> bool {
        space.contains(family)
            && spec.image_distance(family, spec.eval(&self.center, self.t)) < self.radius
    }
}

/// A basis entourage: the finite intersection of gauge bounds.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GaugeEntourage {
    constraints: Vec<GaugeConstraint>,
}

impl GaugeEntourage {
    pub fn new(constraints: Vec<GaugeConstraint>) -> Result<Self, GaugeError> {
        if constraints.is_empty() {
            return Err(GaugeError::EmptyEntourage);
        }
        for c in &constraints {
            GaugeConstraint::new(c.t, c.eps)?;
        }
        Ok(GaugeEntourage { constraints })
    }

    pub fn single(t: f64, eps: f64) -> Result<Self, GaugeError> {
        Ok(GaugeEntourage {
            constraints: vec![GaugeConstraint::new(t, eps)?],
        })
    }

    pub fn constraints(&self) -> &[GaugeConstraint] {
        &self.constraints
    }

    pub fn min_radius(&self) -> f64 {
        self.constraints
            .iter()
            .map(|c| c.eps)
            .fold(f64::INFINITY, f64::min)
    }

    /// `(a, b) ∈ U`.
    pub fn contains(&self, spec: &CycleSpec, a: &Solution, b: &Solution) -> bool {
        self.constraints.iter().all(|c| c.holds(spec, a, b))
    }

    /// The section `U[x]` as a predicate.
    pub fn section<'a>(
        &'a self,
        spec: &'a CycleSpec,
        x: Solution,
    ) -> impl Fn(&Solution) -> bool + 'a {
        move |y| self.contains(spec, &x, y)
    }

    /// Largest ratio `d_{t_i}(a, b) / ε_i`; the pair is inside iff this is `< 1`.
    pub fn excess(&self, spec: &CycleSpec, a: &Solution, b: &Solution) -> f64 {
        self.constraints
            .iter()
            .map(|c| gauge_dist(spec, c.t, a, b) / c.eps)
            .fold(0.0, f64::max)
    }

    /// The same gauges with every radius halved; `V ∘ V⁻¹ ⊂ U` for this `V`.
    pub fn halved(&self) -> GaugeEntourage {
        GaugeEntourage {
            constraints: self
                .constraints
                .iter()
                .map(|c| GaugeConstraint {
                    t: c.t,
                    eps: c.eps / 2.0,
                })
                .collect(),
        }
    }

    /// A basis entourage contained in `self ∩ other`: union of constraints,
    /// taking the smaller radius when a gauge appears in both.
    pub fn meet(&self, other: &GaugeEntourage) -> GaugeEntourage {
        let mut out = self.constraints.clone();
        for c in &other.constraints {
            match out.iter_mut().find(|d| d.t == c.t) {
                Some(d) => d.eps = d.eps.min(c.eps),
                None => out.push(*c),
            }
        }
        GaugeEntourage { constraints: out }
    }
}

/// A gauge time separating two distinct solutions, or `None` when they are
/// equal.
///
/// Candidates are the times at which either solution sits at `b0` or at its
/// turning point; the one with the largest distance is returned. Two distinct
/// solutions are never at the same place at all four of those instants.
pub fn separate(spec: &CycleSpec, s1: &Solution, s2: &Solution) -> Option<f64> {
    if spec.same_solution(s1, s2) {
        return None;
    }
    let mut best: Option<(f64, f64)> = None;
    for s in [s1, s2] {
        let p = spec.period(s.family());
        let at_far = (spec.leg_out(s.family()) - s.phase()).rem_euclid(p);
        let at_start = (-s.phase()).rem_euclid(p);
        for t in [at_far, at_start] {
            let d = gauge_dist(spec, t, s1, s2);
            if best.is_none_or(|(_, bd)| d > bd) {
                best = Some((t, d));
            }
        }
    }
    best.map(|(t, _)| t)
}

/// Samples solution triples and checks the uniformity axioms for the basis
/// generated by `entourage`: diagonal containment, closure under meets,
/// `V ∘ V⁻¹ ⊂ U` for the half-radius `V`, and exact symmetry of each gauge.
pub fn uniformity_axiom_checks(
    spec: &CycleSpec,
    space: Space,
    entourage: &GaugeEntourage,
    n_triples: usize,
    seed: u64,
) -> WitnessReport {
    let mut rng = rng_from_seed(seed);
    let half = entourage.halved();
    let companion = GaugeEntourage {
        constraints: entourage
            .constraints
            .iter()
            .flat_map(|c| {
                [
                    GaugeConstraint {
                        t: c.t,
                        eps: c.eps * 0.75,
                    },
                    GaugeConstraint {
                        t: c.t + spec.tau() / 3.0,
                        eps: c.eps * 0.5,
                    },
                ]
            })
            .collect(),
    };
    let meet = entourage.meet(&companion);

    let mut failures: Vec<Witness> = Vec::new();
    let mut composition_premises = 0usize;
    let mut meet_premises = 0usize;

    let perturb = |rng: &mut rand_chacha::ChaCha8Rng, s: &Solution| -> Solution {
        let roll: f64 = rng.gen();
        if roll < 0.25 {
            random_solution(rng, spec, space)
        } else if roll < 0.75 || !space.contains(Family::X0) {
            let shift = rng.gen_range(-0.2..0.2);
            spec.solution(s.family(), s.phase() + shift)
        } else {
            // jump to the other family at a matching position, if there is one
            let other = match s.family() {
                Family::X => Family::X0,
                Family::X0 => Family::X,
            };
            let t = entourage.constraints[0].t;
            let phases = spec.phases_through(other, spec.eval(s, t));
            match phases.first() {
                Some(u) => spec.solution(other, u - t + rng.gen_range(-0.05..0.05)),
                None => random_solution(rng, spec, space),
            }
        }
    };

    for _ in 0..n_triples {
        let x = random_solution(&mut rng, spec, space);
        let y = perturb(&mut rng, &x);
        let z = perturb(&mut rng, &y);
        let triple = |label: &str| {
            Witness::new(label)
                .with("x", Value::Solution(x))
                .with("y", Value::Solution(y))
                .with("z", Value::Solution(z))
        };

        if !entourage.contains(spec, &x, &x) {
            failures.push(triple("diagonal"));
        }
        if entourage
            .constraints
            .iter()
            .any(|c| gauge_dist(spec, c.t, &x, &y) != gauge_dist(spec, c.t, &y, &x))
        {
            failures.push(triple("symmetry"));
        }
        if meet.contains(spec, &x, &y) {
            meet_premises += 1;
            if !(entourage.contains(spec, &x, &y) && companion.contains(spec, &x, &y)) {
                failures.push(triple("meet"));
            }
        }
        // V ∘ V⁻¹: (x, y) ∈ V and (z, y) ∈ V imply (x, z) ∈ U
        if half.contains(spec, &x, &y) && half.contains(spec, &z, &y) {
            composition_premises += 1;
            if !entourage.contains(spec, &x, &z) {
                failures.push(triple("composition"));
            }
        }
    }

    let status = if failures.is_empty() {
        Status::Verified
    } else {
        Status::Falsified
    };
    let mut report = WitnessReport::new(Property::UniformityAxioms, status);
    report.constant("failures", failures.len() as f64);
    report.constant("meet_premises", meet_premises as f64);
    report.constant("composition_premises", composition_premises as f64);
    report.constant("min_radius", entourage.min_radius());
    report.sample("n_triples", n_triples);
    report.sample("seed", seed);
    report.witnesses = failures.into_iter().take(10).collect();
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn gauge_dist_examples() {
        let spec = CycleSpec::default();
        let x = spec.solution(Family::X, 0.0);
        let x0 = spec.solution(Family::X0, 0.0);
        assert_eq!(gauge_dist(&spec, 0.0, &x, &x0), 0.0);
        assert_abs_diff_eq!(
            gauge_dist(&spec, spec.tau() / 2.0, &x, &x0),
            0.4,
            epsilon = 1e-12
        );
        for t in [-3.0, 0.0, 0.7, 11.0] {
            assert_eq!(gauge_dist(&spec, t, &x, &x), 0.0);
        }
    }

    #[test]
    fn ball_membership() {
        let spec = CycleSpec::default();
        let x = spec.solution(Family::X, 0.0);
        let x0 = spec.solution(Family::X0, 0.0);
        let ball = GaugeBall::new(x, 0.0, 0.01).unwrap();
        assert!(ball.contains(&spec, &x0));
        assert!(ball.contains(&spec, &x));
        let far = GaugeBall::new(spec.solution(Family::X, spec.tau() / 2.0), 0.0, 0.1).unwrap();
        assert!(!far.contains(&spec, &x0));
        assert!(GaugeBall::new(x, 0.0, 0.0).is_err());
        assert!(GaugeBall::new(x, f64::NAN, 1.0).is_err());
    }

    #[test]
    fn membership_is_strict() {
        let spec = CycleSpec::default();
        let x = spec.solution(Family::X, 0.0);
        let x0 = spec.solution(Family::X0, 0.0);
        let d = gauge_dist(&spec, 1.0, &x, &x0);
        assert!(d > 0.0);
        assert!(!GaugeBall::new(x, 1.0, d).unwrap().contains(&spec, &x0));
        assert!(!GaugeEntourage::single(1.0, d)
            .unwrap()
            .contains(&spec, &x, &x0));
    }

    #[test]
    fn entourage_membership() {
        let spec = CycleSpec::default();
        let x = spec.solution(Family::X, 0.0);
        let x0 = spec.solution(Family::X0, 0.0);
        let u = GaugeEntourage::single(0.0, 0.5).unwrap();
        assert!(u.contains(&spec, &x, &x0));
        let u = GaugeEntourage::new(vec![
            GaugeConstraint::new(0.0, 0.5).unwrap(),
            GaugeConstraint::new(spec.tau() / 2.0, 0.3).unwrap(),
        ])
        .unwrap();
        assert!(!u.contains(&spec, &x, &x0));
        assert!(u.contains(&spec, &x0, &x0));
        assert!(!u.section(&spec, x)(&x0));
        assert!(GaugeEntourage::new(vec![]).is_err());
    }

    #[test]
    fn meet_takes_smaller_radius() {
        let a = GaugeEntourage::new(vec![GaugeConstraint { t: 0.0, eps: 0.2 }]).unwrap();
        let b = GaugeEntourage::new(vec![
            GaugeConstraint { t: 0.0, eps: 0.1 },
            GaugeConstraint { t: 1.0, eps: 0.3 },
        ])
        .unwrap();
        let m = a.meet(&b);
        assert_eq!(
            m.constraints(),
            &[
                GaugeConstraint { t: 0.0, eps: 0.1 },
                GaugeConstraint { t: 1.0, eps: 0.3 }
            ]
        );
    }

    #[test]
    fn separate_examples() {
        let spec = CycleSpec::default();
        let x = spec.solution(Family::X, 0.0);
        let x0 = spec.solution(Family::X0, 0.0);
        let t = separate(&spec, &x, &x0).unwrap();
        assert_abs_diff_eq!(t, spec.tau() / 2.0, epsilon = 1e-12);
        assert_abs_diff_eq!(gauge_dist(&spec, t, &x, &x0), 0.4, epsilon = 1e-12);

        assert_eq!(separate(&spec, &x, &x), None);

        let y = spec.solution(Family::X, 0.1);
        let t = separate(&spec, &x, &y).unwrap();
        let bound = 0.3 * (1.0 - (-0.1f64).exp()) * (1.0 - 1e-9);
        assert!(gauge_dist(&spec, t, &x, &y) >= bound);
    }

    #[test]
    fn axiom_checks_pass() {
        let spec = CycleSpec::default();
        let u = GaugeEntourage::single(0.0, 0.2).unwrap();
        let report = uniformity_axiom_checks(&spec, Space::Full, &u, 10_000, 3);
        assert_eq!(report.status, Status::Verified);
        assert!(report.get_constant("composition_premises").unwrap() > 100.0);

        let u = GaugeEntourage::new(vec![
            GaugeConstraint::new(0.0, 0.2).unwrap(),
            GaugeConstraint::new(1.0, 0.1).unwrap(),
        ])
        .unwrap();
        let report = uniformity_axiom_checks(&spec, Space::Full, &u, 5_000, 4);
        assert_eq!(report.status, Status::Verified);
        assert!(report.get_constant("composition_premises").unwrap() > 10.0);
    }
}
