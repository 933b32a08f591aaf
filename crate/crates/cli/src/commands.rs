use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use gaugeflow_core::checkers::{
    density_probe_multi, equicontinuity_falsifier, expansion_constant, sensitivity_falsifier,
    transitivity_pair_report, CheckError, EquicontinuitySearch, SensitivitySearch,
};
use gaugeflow_core::{
    verify_all, CycleSpec, Family, GaugeBall, GaugeConstraint, GaugeEntourage, Property, Space,
    Status, WitnessReport,
};
use serde::Serialize;
use thiserror::Error;

use crate::args::{BallArg, Cli, Command, Format, OrbitArgs, Probe};
use crate::config::{load_config, ConfigError, RunConfig};
use crate::expected::expected_status;
use crate::render::{canonical_json, fmt_f64, report_text};

/// Largest trajectory the `orbit` command will write.
pub const MAX_ORBIT_ROWS: usize = 10_000_000;

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error("invalid argument: {0}")]
    Usage(String),
    #[error(transparent)]
    Check(#[from] CheckError),
    #[error("cannot write {path}: {source}")]
    Write {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        2
    }
}

#[derive(Debug, Serialize)]
pub struct SpecEcho {
    pub config: RunConfig,
    pub space: Space,
    pub tau: f64,
    pub tau0: f64,
    pub period_mismatch: bool,
}

#[derive(Debug, Serialize)]
pub struct Overall {
    /// `pass` iff every property matches its expected status.
    pub status: &'static str,
    pub matched: usize,
    pub total: usize,
    pub expected: BTreeMap<Property, Status>,
    pub mismatches: Vec<Property>,
}

#[derive(Debug, Serialize)]
pub struct VerifyDocument {
    pub spec_echo: SpecEcho,
    pub reports: Vec<WitnessReport>,
    pub overall: Overall,
}

fn write_output(out: Option<&Path>, content: &str) -> Result<(), CliError> {
    match out {
        Some(path) => std::fs::write(path, content).map_err(|source| CliError::Write {
            path: path.to_path_buf(),
            source,
        }),
        None => {
            print!("{content}");
            Ok(())
        }
    }
}

fn resolve_config(cli: &Cli) -> Result<RunConfig, CliError> {
    let mut cfg = match &cli.config {
        Some(path) => load_config(path)?,
        None => RunConfig::default(),
    };
    if let Some(seed) = cli.seed {
        cfg.sampling.seed = seed;
    }
    Ok(cfg)
}

/// Runs `verify_all` and assembles the output document.
pub fn verify_document(cfg: &RunConfig) -> Result<VerifyDocument, CliError> {
    let spec = cfg.spec()?;
    let space = cfg.space();
    let reports = verify_all(&spec, &cfg.check_config())?;
    let expected: BTreeMap<Property, Status> = Property::CORE
        .iter()
        .map(|&p| (p, expected_status(p, space)))
        .collect();
    let mismatches: Vec<Property> = reports
        .iter()
        .filter(|r| expected.get(&r.property).is_some_and(|e| *e != r.status))
        .map(|r| r.property)
        .collect();
    let total = expected.len();
    Ok(VerifyDocument {
        spec_echo: SpecEcho {
            config: cfg.clone(),
            space,
            tau: spec.tau(),
            tau0: spec.tau0(),
            period_mismatch: spec.period_mismatch(),
        },
        overall: Overall {
            status: if mismatches.is_empty() {
                "pass"
            } else {
                "fail"
            },
            matched: total - mismatches.len(),
            total,
            expected,
            mismatches,
        },
        reports,
    })
}

fn verify_text(doc: &VerifyDocument) -> String {
    let echo = &doc.spec_echo;
    let mut out = format!(
        "space: {:?}\ntau = {}\ntau0 = {}\nseed = {}\n",
        echo.space,
        fmt_f64(echo.tau),
        fmt_f64(echo.tau0),
        echo.config.sampling.seed
    );
    if echo.period_mismatch {
        out.push_str("warning: tau0 != tau / 2 (asymmetric configuration)\n");
    }
    out.push('\n');
    for r in &doc.reports {
        out.push_str(&report_text(
            r,
            doc.overall.expected.get(&r.property).copied(),
        ));
        out.push('\n');
    }
    out.push_str(&format!(
        "overall: {} ({}/{} properties as expected)\n",
        doc.overall.status, doc.overall.matched, doc.overall.total
    ));
    out
}

/// CSV `t,x,y` for `sol` sampled at `t0, t0 + dt, ...` up to `t1`.
pub fn orbit_csv(
    spec: &CycleSpec,
    family: Family,
    phase: f64,
    t0: f64,
    t1: f64,
    dt: f64,
) -> Result<String, CliError> {
    if ![phase, t0, t1, dt].iter().all(|v| v.is_finite()) {
        return Err(CliError::Usage("orbit arguments must be finite".into()));
    }
    if dt <= 0.0 {
        return Err(CliError::Usage(format!("dt must be > 0, got {dt}")));
    }
    if t1 <= t0 {
        return Err(CliError::Usage(format!(
            "need t1 > t0, got t0 = {t0}, t1 = {t1}"
        )));
    }
    let steps = ((t1 - t0) / dt).floor();
    if steps >= MAX_ORBIT_ROWS as f64 {
        return Err(CliError::Usage(format!(
            "more than {MAX_ORBIT_ROWS} rows requested"
        )));
    }
    let rows = steps as usize + 1;
    let sol = spec.solution(family, phase);
    let mut out = String::with_capacity(48 * (rows + 1));
    out.push_str("t,x,y\n");
    for k in 0..rows {
        let t = t0 + k as f64 * dt;
        let p = spec.eval(&sol, t);
        out.push_str(&format!(
            "{},{},{}\n",
            fmt_f64(t),
            fmt_f64(p.x()),
            fmt_f64(p.y())
        ));
    }
    Ok(out)
}

fn ball(spec: &CycleSpec, space: Space, b: BallArg) -> Result<GaugeBall, CliError> {
    if !space.contains(b.family) {
        return Err(CliError::Usage(format!(
            "{} is not part of this space",
            b.family
        )));
    }
    if !b.phase.is_finite() {
        return Err(CliError::Usage("phase must be finite".into()));
    }
    GaugeBall::new(spec.solution(b.family, b.phase), b.t, b.radius)
        .map_err(|e| CliError::Usage(e.to_string()))
}

fn constraint(t: f64, eps: f64) -> Result<GaugeConstraint, CliError> {
    GaugeConstraint::new(t, eps).map_err(|e| CliError::Usage(e.to_string()))
}

/// Runs one probe and returns its report.
pub fn probe_report(cfg: &RunConfig, probe: &Probe) -> Result<WitnessReport, CliError> {
    let spec = cfg.spec()?;
    let space = cfg.space();
    match *probe {
        Probe::Transitivity { y1, y2 } => {
            let (y1, y2) = (ball(&spec, space, y1)?, ball(&spec, space, y2)?);
            Ok(transitivity_pair_report(&spec, space, &y1, &y2))
        }
        Probe::Density {
            phase,
            ref gauges,
            resolution,
        } => {
            if !space.contains(Family::X0) || !phase.is_finite() {
                return Err(CliError::Usage(
                    "density needs a finite X0 phase in the full space".into(),
                ));
            }
            let gauges = gauges
                .iter()
                .map(|&t| constraint(t, 1.0))
                .collect::<Result<Vec<_>, _>>()?;
            let x0 = spec.solution(Family::X0, phase);
            let resolution = resolution.unwrap_or(cfg.sampling.phase_grid);
            Ok(density_probe_multi(&spec, &x0, &gauges, resolution)?)
        }
        Probe::Sensitivity {
            eps_min,
            ref extra_gauges,
            delta,
        } => {
            if !(delta > 0.0 && delta.is_finite()) {
                return Err(CliError::Usage(format!("delta must be > 0, got {delta}")));
            }
            let mut constraints = vec![constraint(0.0, eps_min)?];
            for &t in extra_gauges {
                constraints.push(constraint(t, eps_min)?);
            }
            let u = GaugeEntourage::new(constraints).map_err(|e| CliError::Usage(e.to_string()))?;
            let s = &cfg.sampling;
            let horizon = s.horizon_periods as f64 * spec.tau();
            let c = expansion_constant(&spec, &[delta], s.t_step / 10.0, horizon);
            let search = SensitivitySearch::new(
                &spec,
                s.n_neighbors,
                s.horizon_periods,
                s.t_step,
                c,
                s.phase_grid,
            );
            let mut report = sensitivity_falsifier(&spec, space, &u, &search)?;
            report.sample("expansion_delta", delta);
            Ok(report)
        }
        Probe::Equicontinuity {
            family,
            phase,
            s,
            radius,
            eps0,
        } => {
            let nbhd = ball(
                &spec,
                space,
                BallArg {
                    family,
                    phase,
                    t: s,
                    radius,
                },
            )?;
            let u =
                GaugeEntourage::single(0.0, eps0).map_err(|e| CliError::Usage(e.to_string()))?;
            let fine = (spec.tau() / cfg.sampling.t_step).ceil() as usize;
            let search = EquicontinuitySearch::default_for(&spec, space, &nbhd, fine);
            Ok(equicontinuity_falsifier(
                &spec,
                space,
                &nbhd.center(),
                &u,
                &nbhd,
                &search,
            )?)
        }
    }
}

fn execute(cli: &Cli) -> Result<i32, CliError> {
    let cfg = resolve_config(cli)?;
    let out = cli.out.as_deref();
    match &cli.command {
        Command::Verify => {
            let doc = verify_document(&cfg)?;
            let text = match cli.format {
                Format::Json => canonical_json(&doc),
                Format::Text => verify_text(&doc),
            };
            write_output(out, &text)?;
            Ok(if doc.overall.mismatches.is_empty() {
                0
            } else {
                1
            })
        }
        Command::Orbit(OrbitArgs {
            family,
            phase,
            t0,
            t1,
            dt,
        }) => {
            let spec = cfg.spec()?;
            if !cfg.space().contains(*family) {
                return Err(CliError::Usage(format!(
                    "{family} is not part of this space"
                )));
            }
            write_output(out, &orbit_csv(&spec, *family, *phase, *t0, *t1, *dt)?)?;
            Ok(0)
        }
        Command::Probe(probe) => {
            let report = probe_report(&cfg, probe)?;
            let text = match cli.format {
                Format::Json => canonical_json(&report),
                Format::Text => report_text(&report, None),
            };
            write_output(out, &text)?;
            Ok(0)
        }
    }
}

/// Runs a parsed command line and returns the process exit code:
/// 0 on success, 1 when `verify` finds a mismatch, 2 on any input error.
pub fn run(cli: &Cli) -> i32 {
    match execute(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
