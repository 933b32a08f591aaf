use rand::Rng;

use super::report::{Property, Status, Value, Witness, WitnessReport};
use super::sampling::{phase_grid, rng_from_seed};
use super::{matching_x_solutions, CheckError};
use crate::action::{
    default_syndetic_grid, periodicity_gap, right_syndetic_check, stabilizer_generator,
    syndetic_check, SyndeticWitness,
};
use crate::cycle::{CycleSpec, Family, Solution, Space};
use crate::gauge::{gauge_dist, GaugeConstraint};

/// Periodicity of random solutions, syndeticity of their stabilizers with
/// `K = [0, τ]`, and single-gauge density of `X` at random `X0` points.
pub fn dense_periodicity_check(
    spec: &CycleSpec,
    space: Space,
    n_solutions: usize,
    tol: f64,
    n_samples: usize,
    seed: u64,
) -> WitnessReport {
    let mut rng = rng_from_seed(seed);
    let mut witnesses = Vec::new();
    let mut ok = true;

    let mut max_gap = 0.0f64;
    for &family in space.families() {
        for i in 0..n_solutions {
            let sol = spec.solution(family, rng.gen_range(0.0..spec.period(family)));
            let gap = periodicity_gap(spec, &sol, stabilizer_generator(spec, &sol), n_samples);
            max_gap = max_gap.max(gap);
            if gap >= tol {
                ok = false;
            }
            if i == 0 {
                witnesses.push(
                    Witness::new(format!("periodic_{family}"))
                        .with("solution", Value::Solution(sol))
                        .with("generator", Value::Group(stabilizer_generator(spec, &sol)))
                        .with("gap", Value::Distance(gap)),
                );
            }
        }
    }

    let k = SyndeticWitness::new(spec.tau()).expect("tau > 0");
    let grid = default_syndetic_grid(spec);
    let mut syndetic_ok = true;
    for &family in space.families() {
        let p = spec.period(family);
        syndetic_ok &= right_syndetic_check(p, k, &grid);
        syndetic_ok &= syndetic_check(p, k, &grid);
        syndetic_ok &= k.covers_period(p);
    }
    ok &= syndetic_ok;

    let mut max_residual = 0.0f64;
    let mut density_checked = 0usize;
    if space.contains(Family::X0) {
        for i in 0..n_solutions {
            let x0 = spec.solution(Family::X0, rng.gen_range(0.0..spec.tau0()));
            let t = rng.gen_range(-spec.tau()..spec.tau());
            let x = matching_x_solutions(spec, &x0, t)[0];
            let residual = gauge_dist(spec, t, &x, &x0);
            max_residual = max_residual.max(residual);
            density_checked += 1;
            if residual > tol {
                ok = false;
            }
            if i == 0 {
                witnesses.push(
                    Witness::new("density_match")
                        .with("x0", Value::Solution(x0))
                        .with("gauge", Value::Gauge(t))
                        .with("x", Value::Solution(x))
                        .with("residual", Value::Distance(residual)),
                );
            }
        }
    }

    let mut report = WitnessReport::new(
        Property::DensePeriodicity,
        if ok {
            Status::Verified
        } else {
            Status::Falsified
        },
    );
    report.witnesses = witnesses;
    report.constant("max_periodicity_gap", max_gap);
    report.constant("syndetic_kappa", k.kappa());
    report.constant("syndetic_grid_ok", if syndetic_ok { 1.0 } else { 0.0 });
    report.constant("max_density_residual", max_residual);
    report.constant("density_matches", density_checked as f64);
    report.sample("n_solutions", n_solutions);
    report.sample("n_samples", n_samples);
    report.sample("tol", tol);
    report.sample("syndetic_grid", "[-10tau, 10tau] step tau/100");
    report.sample("seed", seed);
    report
}

fn worst_gauge(spec: &CycleSpec, x: &Solution, x0: &Solution, gauges: &[GaugeConstraint]) -> f64 {
    gauges
        .iter()
        .map(|g| gauge_dist(spec, g.t, x, x0))
        .fold(0.0, f64::max)
}

/// Exploratory: how close can one `X` solution get to `x0` under several
/// gauges at once? Minimises `max_i d_{t_i}(x, x0)` over an `X` phase grid,
/// the exact single-gauge matches, and three rounds of local refinement.
/// Always `Inconclusive`.
pub fn density_probe_multi(
    spec: &CycleSpec,
    x0: &Solution,
    gauges: &[GaugeConstraint],
    resolution: usize,
) -> Result<WitnessReport, CheckError> {
    if x0.family() != Family::X0 {
        return Err(CheckError::InvalidInput("x0 must belong to X0".into()));
    }
    if gauges.is_empty() || resolution == 0 {
        return Err(CheckError::InvalidInput(
            "need at least one gauge and a positive resolution".into(),
        ));
    }
    let tau = spec.tau();
    let objective = |u: f64| worst_gauge(spec, &spec.solution(Family::X, u), x0, gauges);

    let mut candidates: Vec<f64> = phase_grid(tau, resolution).collect();
    for g in gauges {
        candidates.extend(
            matching_x_solutions(spec, x0, g.t)
                .iter()
                .map(|s| s.phase()),
        );
    }
    let (mut best_u, mut best) = candidates
        .iter()
        .map(|&u| (u, objective(u)))
        .min_by(|a, b| a.1.total_cmp(&b.1))
        .expect("non-empty candidate set");

    let mut half_width = tau / resolution as f64;
    for _ in 0..3 {
        let n = 64;
        for j in 0..=n {
            let u = best_u - half_width + 2.0 * half_width * j as f64 / n as f64;
            let v = objective(u);
            if v < best {
                best = v;
                best_u = u;
            }
        }
        half_width /= 16.0;
    }

    let x = spec.solution(Family::X, best_u);
    let mut report = WitnessReport::new(Property::DensePeriodicity, Status::Inconclusive);
    report.constant("residual", best);
    report.constant("best_phase", x.phase());
    let mut w = Witness::new("multi_gauge_probe")
        .with("x0", Value::Solution(*x0))
        .with("x", Value::Solution(x))
        .with("residual", Value::Distance(best));
    for (i, g) in gauges.iter().enumerate() {
        w = w.with(&format!("gauge_{i}"), Value::Gauge(g.t));
    }
    report.witnesses.push(w);
    report.sample("resolution", resolution);
    report.sample("gauges", gauges.len());
    report.flags.push("exploratory".into());
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dense_periodicity_default() {
        let spec = CycleSpec::default();
        let r = dense_periodicity_check(&spec, Space::Full, 100, 1e-12, 1000, 0);
        assert_eq!(r.status, Status::Verified);
        assert!(r.get_constant("max_density_residual").unwrap() <= 1e-12);
        assert_eq!(r.get_constant("density_matches"), Some(100.0));
    }

    #[test]
    fn density_match_at_quarter_period() {
        let spec = CycleSpec::default();
        let x0 = spec.solution(Family::X0, 0.0);
        let t = spec.tau() / 4.0;
        let x = matching_x_solutions(&spec, &x0, t)[0];
        assert_eq!(x.family(), Family::X);
        assert!(gauge_dist(&spec, t, &x, &x0) < 1e-15);
    }

    #[test]
    fn probe_single_gauge_is_exact() {
        let spec = CycleSpec::default();
        let x0 = spec.solution(Family::X0, 0.2);
        let g = [GaugeConstraint::new(1.0, 0.01).unwrap()];
        let r = density_probe_multi(&spec, &x0, &g, 1000).unwrap();
        assert_eq!(r.status, Status::Inconclusive);
        assert!(r.get_constant("residual").unwrap() < 1e-15);
    }

    #[test]
    fn probe_on_shared_leg_is_exact() {
        let spec = CycleSpec::default();
        let x0 = spec.solution(Family::X0, 0.0);
        let g = [
            GaugeConstraint::new(0.0, 0.01).unwrap(),
            GaugeConstraint::new((7.0f64 / 6.0).ln(), 0.01).unwrap(),
        ];
        let r = density_probe_multi(&spec, &x0, &g, 1000).unwrap();
        assert!(r.get_constant("residual").unwrap() < 1e-15);
    }

    #[test]
    fn probe_rejects_bad_input() {
        let spec = CycleSpec::default();
        let x = spec.solution(Family::X, 0.0);
        let g = [GaugeConstraint::new(0.0, 0.01).unwrap()];
        assert!(density_probe_multi(&spec, &x, &g, 10).is_err());
        let x0 = spec.solution(Family::X0, 0.0);
        assert!(density_probe_multi(&spec, &x0, &[], 10).is_err());
    }
}
