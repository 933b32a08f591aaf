use super::report::{Property, Status, Value, Witness, WitnessReport};
use super::{matching_x_solutions, CheckError};
use crate::action::act;
use crate::cycle::{CycleSpec, Family, Solution, Space};
use crate::gauge::{gauge_dist, GaugeBall, GaugeConstraint, GaugeEntourage};

/// Candidate recipe for [`equicontinuity_falsifier`].
#[derive(Debug, Clone, PartialEq)]
pub struct EquicontinuitySearch {
    /// Group elements to try.
    pub g_grid: Vec<f64>,
    /// Phase offsets applied to each exact-crossing candidate.
    pub perturbations: Vec<f64>,
    /// Extra gauge bounds around the center that every candidate must also
    /// satisfy, turning the subbasic ball into a basic neighbourhood.
    pub companions: Vec<GaugeConstraint>,
}

impl EquicontinuitySearch {
    /// The default recipe for a neighbourhood `nbhd`.
    ///
    /// `g` runs over `τ/2`, `kτ0` for `k = 1..=4` and `fine_steps` points of
    /// `[0, τ)`. Perturbations stay inside the ball on the candidate's own
    /// leg. In the single-cycle space two companion gauges are added, so the
    /// neighbourhood excludes the opposite-leg crossing of the center's path.
    pub fn default_for(
        spec: &CycleSpec,
        space: Space,
        nbhd: &GaugeBall,
        fine_steps: usize,
    ) -> Self {
        let tau = spec.tau();
        let mut g_grid = vec![tau / 2.0];
        g_grid.extend((1..=4).map(|k| k as f64 * spec.tau0()));
        g_grid.extend((0..fine_steps).map(|i| tau * i as f64 / fine_steps as f64));

        let unit = nbhd.radius() / spec.max_speed(Family::X);
        let perturbations = [0.25, 0.5, 0.9]
            .iter()
            .flat_map(|f| [-f * unit, f * unit])
            .collect();

        let companions = match space {
            Space::Full => Vec::new(),
            Space::SingleCycle => [tau / 8.0, 3.0 * tau / 8.0]
                .iter()
                .map(|h| GaugeConstraint {
                    t: nbhd.t() + h,
                    eps: nbhd.radius(),
                })
                .collect(),
        };
        EquicontinuitySearch {
            g_grid,
            perturbations,
            companions,
        }
    }
}

fn recipe_applies(space: Space, x: &Solution) -> bool {
    // In the full space the recipe targets X0 centers; X centers are only
    // meaningful when X is the whole space.
    x.family() == Family::X0 || space == Space::SingleCycle
}

/// Searches the neighbourhood `nbhd` of `x` for `(y, g)` with
/// `(T(g, x), T(g, y)) ∉ U`.
///
/// Candidates are the `X` solutions crossing `x(s)` at the ball's gauge time
/// `s` (both legs), plus phase perturbations of those, kept only when they
/// lie in the neighbourhood. The report carries the candidate with the
/// largest gap; `Verified` means a witness of non-equicontinuity at `x` was
/// found.
pub fn equicontinuity_falsifier(
    spec: &CycleSpec,
    space: Space,
    x: &Solution,
    entourage: &GaugeEntourage,
    nbhd: &GaugeBall,
    search: &EquicontinuitySearch,
) -> Result<WitnessReport, CheckError> {
    if !recipe_applies(space, x) {
        return Err(CheckError::NotApplicable(
            "the default recipe falsifies at X0 centers".into(),
        ));
    }
    if !space.contains(x.family()) {
        return Err(CheckError::InvalidInput(format!(
            "{} is not in this space",
            x.family()
        )));
    }
    if !spec.same_solution(&nbhd.center(), x) {
        return Err(CheckError::InvalidInput(
            "neighbourhood must be centred at x".into(),
        ));
    }
    let [u] = entourage.constraints() else {
        return Err(CheckError::InvalidInput(
            "entourage must be a single d_0 bound".into(),
        ));
    };
    if u.t != 0.0 || u.eps >= spec.b0().dist(spec.b1()) {
        return Err(CheckError::InvalidInput(
            "entourage must be d_0 < eps0 with eps0 < d(b0, b1)".into(),
        ));
    }
    let eps0 = u.eps;
    let in_nbhd = |y: &Solution| {
        nbhd.contains(spec, y) && search.companions.iter().all(|c| c.holds(spec, x, y))
    };

    let mut candidates = Vec::new();
    for base in matching_x_solutions(spec, x, nbhd.t()) {
        for delta in std::iter::once(0.0).chain(search.perturbations.iter().copied()) {
            let y = spec.solution(Family::X, base.phase() + delta);
            if in_nbhd(&y) {
                candidates.push(y);
            }
        }
    }

    let mut best: Option<(Solution, f64, f64)> = None;
    for y in &candidates {
        for &g in &search.g_grid {
            let gap = gauge_dist(spec, 0.0, &act(spec, g, x), &act(spec, g, y));
            if best.is_none_or(|(_, _, b)| gap > b) {
                best = Some((*y, g, gap));
            }
        }
    }

    let found = best.is_some_and(|(_, _, gap)| gap >= eps0);
    let status = if spec.period_mismatch() {
        Status::Inconclusive
    } else if found {
        Status::Verified
    } else {
        Status::Falsified
    };
    let mut report = WitnessReport::new(Property::NonEquicontinuity, status);
    if spec.period_mismatch() {
        report.flags.push("PeriodMismatch".into());
    }
    report.constant("epsilon0", eps0);
    report.constant("candidates", candidates.len() as f64);
    report.constant("best_gap", best.map_or(0.0, |b| b.2));
    if let Some((y, g, gap)) = best {
        let mut w = Witness::new(if found { "escape" } else { "closest_approach" })
            .with("x", Value::Solution(*x))
            .with("y", Value::Solution(y))
            .with("g", Value::Group(g))
            .with("gap", Value::Distance(gap))
            .with("epsilon0", Value::Distance(eps0))
            .with("nbhd_t", Value::Gauge(nbhd.t()))
            .with("nbhd_radius", Value::Distance(nbhd.radius()));
        for (i, c) in search.companions.iter().enumerate() {
            w = w
                .with(&format!("companion{i}_t"), Value::Gauge(c.t))
                .with(&format!("companion{i}_eps"), Value::Distance(c.eps));
        }
        report.witnesses.push(w);
    }
    report.sample("g_grid_points", search.g_grid.len());
    report.sample("perturbations", search.perturbations.len());
    report.sample("companions", search.companions.len());
    Ok(report)
}

/// Runs [`equicontinuity_falsifier`] on `B(x, d_s, radius)` for `s_grid`
/// gauge times spread over one period of `x`.
///
/// `Verified` if every neighbourhood holds a witness, `Falsified` if none
/// does, `Inconclusive` otherwise. `worst_case_gap` is the smallest best gap
/// over the sweep.
pub fn equicontinuity_sweep(
    spec: &CycleSpec,
    space: Space,
    x: &Solution,
    entourage: &GaugeEntourage,
    radius: f64,
    s_grid: usize,
    fine_steps: usize,
) -> Result<WitnessReport, CheckError> {
    let period = spec.period(x.family());
    let mut found = 0usize;
    let mut worst_gap = f64::INFINITY;
    let mut worst: Option<Witness> = None;
    let mut canonical: Option<Witness> = None;
    let mut flags = Vec::new();
    for i in 0..s_grid.max(1) {
        let s = period * i as f64 / s_grid.max(1) as f64;
        let nbhd =
            GaugeBall::new(*x, s, radius).map_err(|e| CheckError::InvalidInput(e.to_string()))?;
        let search = EquicontinuitySearch::default_for(spec, space, &nbhd, fine_steps);
        let r = equicontinuity_falsifier(spec, space, x, entourage, &nbhd, &search)?;
        let gap = r.get_constant("best_gap").unwrap_or(0.0);
        if r.witnesses.first().is_some_and(|w| w.label == "escape") {
            found += 1;
        }
        if i == 0 {
            canonical = r.witnesses.first().cloned();
        }
        if gap < worst_gap {
            worst_gap = gap;
            worst = r.witnesses.first().cloned();
        }
        flags = r.flags;
    }
    let n = s_grid.max(1);
    let status = if !flags.is_empty() {
        Status::Inconclusive
    } else if found == n {
        Status::Verified
    } else if found == 0 {
        Status::Falsified
    } else {
        Status::Inconclusive
    };
    let mut report = WitnessReport::new(Property::NonEquicontinuity, status);
    report.flags = flags;
    report.witnesses.extend(canonical);
    report.witnesses.extend(worst);
    report.constant("neighbourhoods_with_witness", found as f64);
    report.constant(
        "worst_case_gap",
        if worst_gap.is_finite() {
            worst_gap
        } else {
            0.0
        },
    );
    report.constant("epsilon0", entourage.min_radius());
    report.sample("s_grid", n);
    report.sample("nbhd_radius", radius);
    report.sample("fine_g_steps", fine_steps);
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_witness() {
        let spec = CycleSpec::default();
        let x = spec.solution(Family::X0, 0.0);
        let nbhd = GaugeBall::new(x, 0.0, 1e-3).unwrap();
        let u = GaugeEntourage::single(0.0, 0.05).unwrap();
        let search = EquicontinuitySearch::default_for(&spec, Space::Full, &nbhd, 1000);
        let r = equicontinuity_falsifier(&spec, Space::Full, &x, &u, &nbhd, &search).unwrap();
        assert_eq!(r.status, Status::Verified);
        assert!((r.get_constant("best_gap").unwrap() - 0.4).abs() < 1e-12);

        // the witness the construction names: y = (X, 0), g = τ/2
        let y = spec.solution(Family::X, 0.0);
        assert!(nbhd.contains(&spec, &y));
        let g = spec.tau() / 2.0;
        let gap = gauge_dist(&spec, 0.0, &act(&spec, g, &x), &act(&spec, g, &y));
        assert!((gap - 0.4).abs() < 1e-12);
    }

    #[test]
    fn x_center_in_full_space_is_not_applicable() {
        let spec = CycleSpec::default();
        let x = spec.solution(Family::X, 0.0);
        let nbhd = GaugeBall::new(x, 0.0, 1e-3).unwrap();
        let u = GaugeEntourage::single(0.0, 0.05).unwrap();
        let search = EquicontinuitySearch::default_for(&spec, Space::Full, &nbhd, 10);
        assert!(matches!(
            equicontinuity_falsifier(&spec, Space::Full, &x, &u, &nbhd, &search),
            Err(CheckError::NotApplicable(_))
        ));
    }

    #[test]
    fn rejects_bad_entourage() {
        let spec = CycleSpec::default();
        let x = spec.solution(Family::X0, 0.0);
        let nbhd = GaugeBall::new(x, 0.0, 1e-3).unwrap();
        let search = EquicontinuitySearch::default_for(&spec, Space::Full, &nbhd, 10);
        for u in [
            GaugeEntourage::single(0.5, 0.05).unwrap(),
            GaugeEntourage::single(0.0, 0.3).unwrap(),
        ] {
            assert!(equicontinuity_falsifier(&spec, Space::Full, &x, &u, &nbhd, &search).is_err());
        }
    }

    #[test]
    fn single_cycle_has_no_witness() {
        let spec = CycleSpec::default();
        let u = GaugeEntourage::single(0.0, 0.05).unwrap();
        let x = spec.solution(Family::X, 0.37);
        let r = equicontinuity_sweep(&spec, Space::SingleCycle, &x, &u, 1e-3, 25, 1000).unwrap();
        assert_eq!(r.status, Status::Falsified);
        assert!(r.get_constant("worst_case_gap").unwrap() < 0.05);
    }
}
