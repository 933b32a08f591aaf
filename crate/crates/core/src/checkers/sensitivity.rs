use super::report::{Property, Status, Value, Witness, WitnessReport};
use super::sampling::{phase_grid, stepped};
use super::CheckError;
use crate::action::act;
use crate::cycle::{CycleSpec, Family, Solution, Space};
use crate::gauge::{gauge_dist, GaugeEntourage};

/// Empirical expansion constant of the shift on `X` near `x_{b2} = (X, τ/2)`:
/// the largest `d_t(x, y) / d_0(x, y)` over `t ∈ [0, horizon]` for neighbours
/// `y = (X, τ/2 ± δ)`. Tends to `v_max / v_min` as `δ → 0`.
pub fn expansion_constant(spec: &CycleSpec, deltas: &[f64], t_step: f64, horizon: f64) -> f64 {
    let anchor = spec.solution(Family::X, spec.leg_out(Family::X));
    let times = stepped(0.0, horizon, t_step);
    let mut best = 0.0f64;
    for &delta in deltas {
        for side in [-1.0, 1.0] {
            let y = spec.solution(Family::X, anchor.phase() + side * delta);
            let d0 = gauge_dist(spec, 0.0, &anchor, &y);
            let sup = times
                .iter()
                .map(|&t| gauge_dist(spec, t, &anchor, &y))
                .fold(0.0, f64::max);
            best = best.max(sup / d0);
        }
    }
    best
}

/// Parameters for [`sensitivity_falsifier`].
#[derive(Debug, Clone, PartialEq)]
pub struct SensitivitySearch {
    /// Number of members of `B(x_{b2}, d_0, ε₀)` to test.
    pub n_neighbors: usize,
    /// Group elements `g` to apply.
    pub g_grid: Vec<f64>,
    /// Expansion constant used to shrink `ε₀` below the entourage radius.
    pub expansion: f64,
    /// Size of the `X0` phase grid scanned for intruders in the ball.
    pub x0_scan: usize,
}

impl SensitivitySearch {
    /// `g ∈ [0, horizon_periods · τ]` with step `t_step`.
    pub fn new(
        spec: &CycleSpec,
        n_neighbors: usize,
        horizon_periods: u32,
        t_step: f64,
        expansion: f64,
        x0_scan: usize,
    ) -> Self {
        SensitivitySearch {
            n_neighbors,
            g_grid: stepped(0.0, horizon_periods as f64 * spec.tau(), t_step),
            expansion,
            x0_scan,
        }
    }
}

/// Members of `B(x_{b2}, d_0, eps0)`: the `X` solutions through points of the
/// segment within `eps0` of `b2`, on both legs.
fn ball_members(spec: &CycleSpec, eps0: f64, n: usize) -> Vec<Solution> {
    let b2 = spec.b2();
    let inward = (spec.b0() - b2) * (1.0 / spec.b0().dist(b2));
    let positions = n.div_ceil(2);
    let mut out = Vec::with_capacity(n);
    for k in 1..=positions {
        let r = eps0 * k as f64 / (positions + 1) as f64;
        for u in spec.phases_through(Family::X, b2 + inward * r) {
            out.push(spec.solution(Family::X, u));
        }
    }
    out.truncate(n);
    out
}

/// Searches for a sensitivity escape from `entourage` near `x_{b2}`.
///
/// Picks `ε₀ = 0.9 · ε_min / C` (capped below `d(b1, b2) / 2` so the ball
/// holds no `X0` solution), samples ball members, and checks that every
/// shifted pair stays inside the entourage. `Verified` means no member
/// escapes for any `g` in the grid, i.e. `entourage` is not a sensitivity
/// entourage at `x_{b2}`.
pub fn sensitivity_falsifier(
    spec: &CycleSpec,
    space: Space,
    entourage: &GaugeEntourage,
    search: &SensitivitySearch,
) -> Result<WitnessReport, CheckError> {
    if search.n_neighbors == 0 || search.expansion.is_nan() || search.expansion < 1.0 {
        return Err(CheckError::InvalidInput(
            "need at least one neighbour and an expansion constant >= 1".into(),
        ));
    }
    let eps_min = entourage.min_radius();
    let cap = spec.b1().dist(spec.b2()) / 2.0;
    let eps0 = (0.9 * eps_min / search.expansion).min(cap * (1.0 - 1e-9));
    let anchor = spec.solution(Family::X, spec.leg_out(Family::X));

    let members = ball_members(spec, eps0, search.n_neighbors);
    let members_in_ball = members
        .iter()
        .all(|y| gauge_dist(spec, 0.0, &anchor, y) < eps0);

    let x0_intruders = if space.contains(Family::X0) {
        phase_grid(spec.tau0(), search.x0_scan)
            .map(|u| spec.solution(Family::X0, u))
            .filter(|x0| gauge_dist(spec, 0.0, &anchor, x0) < eps0)
            .count()
    } else {
        0
    };

    let mut sup_gap = 0.0f64;
    let mut sup_excess = 0.0f64;
    let mut worst: Option<(Solution, f64)> = None;
    for y in &members {
        for &g in &search.g_grid {
            let gx = act(spec, g, &anchor);
            let gy = act(spec, g, y);
            for c in entourage.constraints() {
                let d = gauge_dist(spec, c.t, &gx, &gy);
                sup_gap = sup_gap.max(d);
                if d / c.eps > sup_excess {
                    sup_excess = d / c.eps;
                    worst = Some((*y, g));
                }
            }
        }
    }

    let status = if !members_in_ball || x0_intruders > 0 {
        Status::Inconclusive
    } else if sup_excess < 1.0 {
        Status::Verified
    } else {
        Status::Falsified
    };
    let mut report = WitnessReport::new(Property::NonSensitivity, status);
    report.constant("epsilon_min", eps_min);
    report.constant("epsilon0", eps0);
    report.constant("expansion_constant", search.expansion);
    report.constant("sup_gap", sup_gap);
    report.constant("sup_excess", sup_excess);
    report.constant("members", members.len() as f64);
    report.constant("x0_intruders", x0_intruders as f64);
    if let Some((y, g)) = worst {
        let mut w = Witness::new("worst_pair")
            .with("anchor", Value::Solution(anchor))
            .with("y", Value::Solution(y))
            .with("g", Value::Group(g))
            .with("epsilon0", Value::Distance(eps0))
            .with("sup_excess", Value::Real(sup_excess));
        for (i, c) in entourage.constraints().iter().enumerate() {
            w = w
                .with(&format!("u{i}_t"), Value::Gauge(c.t))
                .with(&format!("u{i}_eps"), Value::Distance(c.eps));
        }
        report.witnesses.push(w);
    }
    report.sample("n_neighbors", search.n_neighbors);
    report.sample("g_grid_points", search.g_grid.len());
    if let (Some(first), Some(last)) = (search.g_grid.first(), search.g_grid.last()) {
        report.sample("g_min", *first);
        report.sample("g_max", *last);
    }
    report.sample("x0_scan", search.x0_scan);
    Ok(report)
}
