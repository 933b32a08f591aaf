use super::report::{Property, Status, Value, Witness, WitnessReport};
use super::sampling::phase_grid;
use super::{matching_x_solutions, CheckError};
use crate::action::act;
use crate::cycle::{segment_distance, CycleSpec, Family, Space, COORD_TOL};
use crate::gauge::gauge_dist;
use crate::linear_flow::Point2;

/// Exhibits a point of `X` whose `d_0`-ball misses `X0`, so no `X0` orbit is
/// dense.
///
/// `b` must lie strictly between `b1` and `b2`. The separation `m` is the
/// smaller of the analytic point-to-segment distance and a scan over
/// `phase_grid` `X0` phases (the grid includes both turning phases). In the
/// single-cycle space the same `y` is shown to lie on the orbit of `(X, 0)`,
/// and the report is `Falsified` (the action is minimal there).
pub fn minimality_falsifier(
    spec: &CycleSpec,
    space: Space,
    b: Point2,
    phase_grid_size: usize,
    witness_tol: f64,
) -> Result<WitnessReport, CheckError> {
    let inside_a = spec.image_distance(Family::X, b) <= COORD_TOL;
    let along = (b - spec.b0()).norm();
    if !inside_a || along <= spec.b0().dist(spec.b1()) || along >= spec.b0().dist(spec.b2()) {
        return Err(CheckError::BadWitnessPoint(format!("{b:?}")));
    }
    let phase = spec.phases_through(Family::X, b)[0];
    let y = spec.solution(Family::X, phase);

    let mut report;
    if space.contains(Family::X0) {
        let analytic = segment_distance(b, spec.b0(), spec.b1());
        let grid = phase_grid(spec.tau0(), phase_grid_size)
            .chain([spec.leg_out(Family::X0)])
            .map(|u| spec.solution(Family::X0, u))
            .map(|x0| gauge_dist(spec, 0.0, &y, &x0))
            .fold(f64::INFINITY, f64::min);
        let m = analytic.min(grid);
        let agree = (grid - analytic).abs() <= witness_tol;
        let status = if m > 0.0 && agree {
            Status::Verified
        } else {
            Status::Inconclusive
        };
        report = WitnessReport::new(Property::NonMinimality, status);
        report.constant("m", m);
        report.constant("m_analytic", analytic);
        report.constant("m_grid", grid);
        report.constant("certified_radius", m / 2.0);
        report.witnesses.push(
            Witness::new("ball_misses_x0")
                .with("y", Value::Solution(y))
                .with("b", Value::Point(b))
                .with("gauge", Value::Gauge(0.0))
                .with("radius", Value::Distance(m / 2.0)),
        );

        // X accumulates on X0: a single-gauge match at distance zero
        let x0 = spec.solution(Family::X0, 0.0);
        let x = matching_x_solutions(spec, &x0, 0.0)[0];
        report.witnesses.push(
            Witness::new("x_accumulates_on_x0")
                .with("x0", Value::Solution(x0))
                .with("x", Value::Solution(x))
                .with("gauge", Value::Gauge(0.0))
                .with("distance", Value::Distance(gauge_dist(spec, 0.0, &x, &x0))),
        );
    } else {
        // one cycle: the orbit of any point is the whole space
        let base = spec.solution(Family::X, 0.0);
        let reached = act(spec, y.phase(), &base);
        let status = if spec.same_solution(&reached, &y) {
            Status::Falsified
        } else {
            Status::Inconclusive
        };
        report = WitnessReport::new(Property::NonMinimality, status);
        report.witnesses.push(
            Witness::new("orbit_reaches_y")
                .with("base", Value::Solution(base))
                .with("s", Value::Group(y.phase()))
                .with("y", Value::Solution(y)),
        );
    }
    report.sample("phase_grid", phase_grid_size);
    report.sample("witness_tol", witness_tol);
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pt(x: f64) -> Point2 {
        Point2::new(x, 0.0).unwrap()
    }

    #[test]
    fn separation_at_06() {
        let spec = CycleSpec::default();
        let r = minimality_falsifier(&spec, Space::Full, pt(0.6), 10_000, 1e-9).unwrap();
        assert_eq!(r.status, Status::Verified);
        assert!((r.get_constant("m").unwrap() - 0.1).abs() < 1e-9);
        assert!((r.get_constant("m_grid").unwrap() - 0.1).abs() < 1e-9);
        assert_eq!(r.witnesses[1].get("distance"), Some(&Value::Distance(0.0)));
    }

    #[test]
    fn separation_just_past_b1() {
        let spec = CycleSpec::default();
        let r = minimality_falsifier(&spec, Space::Full, pt(0.5 + 1e-6), 10_000, 1e-9).unwrap();
        assert_eq!(r.status, Status::Verified);
        assert!((r.get_constant("m").unwrap() - 1e-6).abs() < 1e-9);
    }

    #[test]
    fn rejects_points_outside_a_minus_a0() {
        let spec = CycleSpec::default();
        for x in [0.4, 0.5, 0.7, 0.8] {
            assert!(matches!(
                minimality_falsifier(&spec, Space::Full, pt(x), 100, 1e-9),
                Err(CheckError::BadWitnessPoint(_))
            ));
        }
        let off = Point2::new(0.6, 0.01).unwrap();
        assert!(minimality_falsifier(&spec, Space::Full, off, 100, 1e-9).is_err());
    }

    #[test]
    fn single_cycle_is_minimal() {
        let spec = CycleSpec::default();
        let r = minimality_falsifier(&spec, Space::SingleCycle, pt(0.6), 100, 1e-9).unwrap();
        assert_eq!(r.status, Status::Falsified);
    }
}
