use thiserror::Error;

use super::report::{Property, Witness, WitnessReport};
use crate::action::{act, is_periodic_with};
use crate::cycle::{segment_distance, CycleSpec, Solution};
use crate::gauge::{gauge_dist, GaugeBall, GaugeConstraint};
use crate::linear_flow::Point2;

#[derive(Debug, Clone, PartialEq, Error)]
#[error("witness `{label}` does not replay: {reason}")]
pub struct ReplayError {
    pub label: String,
    pub reason: String,
}

struct Reader<'a> {
    w: &'a Witness,
}

impl Reader<'_> {
    fn fail(&self, reason: impl Into<String>) -> ReplayError {
        ReplayError {
            label: self.w.label.clone(),
            reason: reason.into(),
        }
    }

    fn sol(&self, name: &str) -> Result<Solution, ReplayError> {
        self.w
            .get(name)
            .and_then(|v| v.as_solution())
            .ok_or_else(|| self.fail(format!("missing solution `{name}`")))
    }

    fn real(&self, name: &str) -> Result<f64, ReplayError> {
        self.w
            .get(name)
            .and_then(|v| v.as_real())
            .ok_or_else(|| self.fail(format!("missing value `{name}`")))
    }

    fn point(&self, name: &str) -> Result<Point2, ReplayError> {
        self.w
            .get(name)
            .and_then(|v| v.as_point())
            .ok_or_else(|| self.fail(format!("missing point `{name}`")))
    }

    fn ball(&self, prefix: &str) -> Result<GaugeBall, ReplayError> {
        GaugeBall::new(
            self.sol(&format!("{prefix}_center"))?,
            self.real(&format!("{prefix}_t"))?,
            self.real(&format!("{prefix}_radius"))?,
        )
        .map_err(|e| self.fail(e.to_string()))
    }

    /// Indexed constraints `{prefix}{i}_t`, `{prefix}{i}_eps`.
    fn constraints(&self, prefix: &str) -> Vec<GaugeConstraint> {
        (0..)
            .map_while(|i| {
                let t = self.w.get(&format!("{prefix}{i}_t"))?.as_real()?;
                let eps = self.w.get(&format!("{prefix}{i}_eps"))?.as_real()?;
                Some(GaugeConstraint { t, eps })
            })
            .collect()
    }

    fn ensure(&self, cond: bool, reason: &str) -> Result<(), ReplayError> {
        if cond {
            Ok(())
        } else {
            Err(self.fail(reason))
        }
    }

    fn close(&self, claimed: f64, actual: f64, tol: f64, what: &str) -> Result<(), ReplayError> {
        self.ensure(
            (claimed - actual).abs() <= tol,
            &format!("{what}: claimed {claimed}, recomputed {actual}"),
        )
    }
}

/// Re-validates every witness in `report` through the public operations,
/// with numeric agreement up to `tol`.
pub fn replay(spec: &CycleSpec, report: &WitnessReport, tol: f64) -> Result<(), ReplayError> {
    for w in &report.witnesses {
        let r = Reader { w };
        match (report.property, w.label.as_str()) {
            (Property::Transitivity, _) => {
                let y1 = r.ball("y1")?;
                let y2 = r.ball("y2")?;
                let mover = r.sol("mover")?;
                let s = r.real("s")?;
                r.ensure(y1.contains(spec, &mover), "mover not in Y1")?;
                let moved = act(spec, s, &mover);
                r.ensure(y2.contains(spec, &moved), "T(s, mover) not in Y2")?;
                let residual = gauge_dist(spec, y2.t(), &moved, &y2.center());
                r.close(r.real("residual")?, residual, tol, "residual")?;
            }
            (Property::NonMinimality, "ball_misses_x0") => {
                let y = r.sol("y")?;
                let b = r.point("b")?;
                let radius = r.real("radius")?;
                r.ensure(spec.eval(&y, 0.0).dist(b) <= tol, "y(0) != b")?;
                let m = segment_distance(b, spec.b0(), spec.b1());
                r.ensure(
                    radius > 0.0 && 2.0 * radius <= m + tol,
                    "radius exceeds separation / 2",
                )?;
            }
            (Property::NonMinimality, "x_accumulates_on_x0") => {
                let d = gauge_dist(spec, r.real("gauge")?, &r.sol("x")?, &r.sol("x0")?);
                r.close(r.real("distance")?, d, tol, "distance")?;
                r.ensure(d <= tol, "match is not exact")?;
            }
            (Property::NonMinimality, "orbit_reaches_y") => {
                let reached = act(spec, r.real("s")?, &r.sol("base")?);
                r.ensure(spec.same_solution(&reached, &r.sol("y")?), "orbit misses y")?;
            }
            (Property::DensePeriodicity, "density_match") => {
                let d = gauge_dist(spec, r.real("gauge")?, &r.sol("x")?, &r.sol("x0")?);
                r.close(r.real("residual")?, d, tol, "residual")?;
            }
            (Property::DensePeriodicity, "multi_gauge_probe") => {
                let x = r.sol("x")?;
                let x0 = r.sol("x0")?;
                let worst = (0..)
                    .map_while(|i| w.get(&format!("gauge_{i}")).and_then(|v| v.as_real()))
                    .map(|t| gauge_dist(spec, t, &x, &x0))
                    .fold(0.0, f64::max);
                r.close(r.real("residual")?, worst, tol, "residual")?;
            }
            (Property::DensePeriodicity, _) => {
                let sol = r.sol("solution")?;
                r.ensure(
                    is_periodic_with(spec, &sol, r.real("generator")?, tol, 200),
                    "not periodic under the recorded generator",
                )?;
            }
            (Property::NonSensitivity, _) => {
                let anchor = r.sol("anchor")?;
                let y = r.sol("y")?;
                let g = r.real("g")?;
                let eps0 = r.real("epsilon0")?;
                r.ensure(
                    gauge_dist(spec, 0.0, &anchor, &y) < eps0,
                    "y not in the d_0 ball",
                )?;
                let excess = r
                    .constraints("u")
                    .iter()
                    .map(|c| {
                        gauge_dist(spec, c.t, &act(spec, g, &anchor), &act(spec, g, &y)) / c.eps
                    })
                    .fold(0.0, f64::max);
                r.close(r.real("sup_excess")?, excess, tol, "excess")?;
            }
            (Property::NonEquicontinuity, label) => {
                let x = r.sol("x")?;
                let y = r.sol("y")?;
                let g = r.real("g")?;
                let ball = GaugeBall::new(x, r.real("nbhd_t")?, r.real("nbhd_radius")?)
                    .map_err(|e| r.fail(e.to_string()))?;
                r.ensure(ball.contains(spec, &y), "y not in the neighbourhood")?;
                for c in r.constraints("companion") {
                    r.ensure(c.holds(spec, &x, &y), "y violates a companion gauge")?;
                }
                let gap = gauge_dist(spec, 0.0, &act(spec, g, &x), &act(spec, g, &y));
                r.close(r.real("gap")?, gap, tol, "gap")?;
                if label == "escape" {
                    r.ensure(gap >= r.real("epsilon0")?, "gap below epsilon0")?;
                }
            }
            (Property::UniformityAxioms, _) => {
                for name in ["x", "y", "z"] {
                    r.sol(name)?;
                }
            }
            (_, other) => return Err(r.fail(format!("unknown witness label `{other}`"))),
        }
    }
    Ok(())
}
