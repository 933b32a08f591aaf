use super::report::WitnessReport;
use super::{
    dense_periodicity_check, equicontinuity_sweep, expansion_constant, minimality_falsifier,
    sensitivity_falsifier, transitivity_check, CheckError, SensitivitySearch,
};
use crate::cycle::{CycleSpec, Family, Space};
use crate::gauge::{uniformity_axiom_checks, GaugeEntourage};

/// Tolerances, sampling sizes and fixed entourages for [`verify_all`].
#[derive(Debug, Clone, PartialEq)]
pub struct CheckConfig {
    pub space: Space,
    /// Equality tolerance for periodicity and exact matches.
    pub eq_tol: f64,
    /// Agreement tolerance between analytic and sampled witnesses.
    pub witness_tol: f64,
    /// Step of the group-element grids.
    pub t_step: f64,
    /// Horizon of the group-element grids, in periods of `X`.
    pub horizon_periods: u32,
    pub phase_grid: usize,
    /// Gauge times per period in the equicontinuity sweep.
    pub s_grid: usize,
    pub n_neighbors: usize,
    pub seed: u64,
    pub transitivity_pairs: usize,
    pub periodic_solutions: usize,
    pub periodic_samples: usize,
    pub axiom_triples: usize,
    /// Radius of the `d_0` entourage tested for sensitivity.
    pub sensitivity_eps: f64,
    /// Radius of the `d_0` entourage tested for equicontinuity.
    pub equicontinuity_eps0: f64,
    /// Radius of the neighbourhoods in the equicontinuity sweep.
    pub nbhd_radius: f64,
    /// Radius of the entourage used for the uniformity axioms.
    pub axiom_eps: f64,
    /// `δ` used for the expansion constant.
    pub expansion_delta: f64,
}

impl Default for CheckConfig {
    fn default() -> Self {
        CheckConfig {
            space: Space::Full,
            eq_tol: 1e-12,
            witness_tol: 1e-9,
            t_step: 1e-3,
            horizon_periods: 10,
            phase_grid: 10_000,
            s_grid: 100,
            n_neighbors: 50,
            seed: 0,
            transitivity_pairs: 200,
            periodic_solutions: 100,
            periodic_samples: 1000,
            axiom_triples: 10_000,
            sensitivity_eps: 0.1,
            equicontinuity_eps0: 0.05,
            nbhd_radius: 1e-3,
            axiom_eps: 0.2,
            expansion_delta: 1e-3,
        }
    }
}

/// Runs every checker with `config` and returns the reports in a fixed
/// order: the five properties, then the uniformity axioms.
pub fn verify_all(
    spec: &CycleSpec,
    config: &CheckConfig,
) -> Result<Vec<WitnessReport>, CheckError> {
    let space = config.space;
    let bad = |e: crate::gauge::GaugeError| CheckError::InvalidInput(e.to_string());
    let mut reports = Vec::with_capacity(6);

    reports.push(transitivity_check(
        spec,
        space,
        config.transitivity_pairs,
        config.witness_tol,
        config.seed,
    ));

    let b = (spec.b1() + spec.b2()) * 0.5;
    reports.push(minimality_falsifier(
        spec,
        space,
        b,
        config.phase_grid,
        config.witness_tol,
    )?);

    reports.push(dense_periodicity_check(
        spec,
        space,
        config.periodic_solutions,
        config.eq_tol,
        config.periodic_samples,
        config.seed,
    ));

    let horizon = config.horizon_periods as f64 * spec.tau();
    let c_est = expansion_constant(
        spec,
        &[config.expansion_delta],
        config.t_step / 10.0,
        horizon,
    );
    let u = GaugeEntourage::single(0.0, config.sensitivity_eps).map_err(bad)?;
    let search = SensitivitySearch::new(
        spec,
        config.n_neighbors,
        config.horizon_periods,
        config.t_step,
        c_est,
        config.phase_grid,
    );
    reports.push(sensitivity_falsifier(spec, space, &u, &search)?);

    let x = match space {
        Space::Full => spec.solution(Family::X0, 0.0),
        Space::SingleCycle => spec.solution(Family::X, 0.0),
    };
    let u0 = GaugeEntourage::single(0.0, config.equicontinuity_eps0).map_err(bad)?;
    let fine = (spec.tau() / config.t_step).ceil() as usize;
    reports.push(equicontinuity_sweep(
        spec,
        space,
        &x,
        &u0,
        config.nbhd_radius,
        config.s_grid,
        fine,
    )?);

    let ua = GaugeEntourage::single(0.0, config.axiom_eps).map_err(bad)?;
    reports.push(uniformity_axiom_checks(
        spec,
        space,
        &ua,
        config.axiom_triples,
        config.seed,
    ));
    Ok(reports)
}
