//! Independent closed-form oracles for the default geometry
//! (`f1` node at 0, `f2` node at 1, unit rates, `b = 0.3, 0.5, 0.7`).

use gaugeflow_core::checkers::{
    equicontinuity_sweep, expansion_constant, minimality_falsifier, transitivity_check,
};
use gaugeflow_core::{CycleSpec, Family, GaugeEntourage, Point2, Space, Status};

const B0: f64 = 0.3;

fn tau() -> f64 {
    2.0 * (7.0f64 / 3.0).ln()
}

fn tau0() -> f64 {
    (7.0f64 / 3.0).ln()
}

/// x-coordinate of the cycle turning at `turn`, `u` time units after
/// leaving `b0` towards the `f2` node.
fn oracle(turn: f64, u: f64) -> f64 {
    let out = ((1.0 - B0) / (1.0 - turn)).ln();
    let period = out + (turn / B0).ln();
    let u = u.rem_euclid(period);
    if u < out {
        1.0 - (1.0 - B0) * (-u).exp()
    } else {
        turn * (-(u - out)).exp()
    }
}

fn ox(u: f64) -> f64 {
    oracle(0.7, u)
}

fn ox0(u: f64) -> f64 {
    oracle(0.5, u)
}

#[test]
fn periods_match_closed_form() {
    let spec = CycleSpec::default();
    assert!((spec.tau() - tau()).abs() < 1e-15);
    assert!((spec.tau0() - tau0()).abs() < 1e-15);
    assert!((spec.tau() - 1.694596).abs() < 1e-6);
    assert!((spec.tau0() - 0.847298).abs() < 1e-6);
}

#[test]
fn evaluation_matches_oracle() {
    let spec = CycleSpec::default();
    for i in 0..2000 {
        let t = -7.0 + 14.0 * i as f64 / 1999.0;
        for (family, f) in [(Family::X, ox as fn(f64) -> f64), (Family::X0, ox0)] {
            let phase = 0.123 * (i % 7) as f64;
            let p = spec.eval(&spec.solution(family, phase), t);
            assert!((p.x() - f(phase + t)).abs() < 1e-12, "{family} at {t}");
            assert_eq!(p.y(), 0.0);
        }
    }
}

#[test]
fn expansion_constant_matches_dense_oracle() {
    let spec = CycleSpec::default();
    let horizon = 10.0 * tau();
    let mut previous = 0.0;
    for delta in [1e-2, 1e-3, 1e-4] {
        let c = expansion_constant(&spec, &[delta], 1e-4, horizon);
        // oracle: anchor at b2, neighbours on either side, dense sampling
        let anchor = tau() / 2.0;
        let mut oracle_c = 0.0f64;
        for side in [-1.0, 1.0] {
            let v = anchor + side * delta;
            let d0 = (ox(anchor) - ox(v)).abs();
            let n = 400_000;
            for k in 0..=n {
                let t = horizon * k as f64 / n as f64;
                oracle_c = oracle_c.max((ox(anchor + t) - ox(v + t)).abs() / d0);
            }
        }
        assert!(
            (c - oracle_c).abs() < 2e-3,
            "delta {delta}: {c} vs {oracle_c}"
        );
        assert!(c > previous, "expansion should grow as delta shrinks");
        previous = c;
    }
    let c = expansion_constant(&spec, &[1e-3], 1e-4, horizon);
    assert!((2.30..=2.37).contains(&c), "{c}");
    assert!((c - 7.0 / 3.0 * (-1e-3f64).exp()).abs() < 5e-3);
}

#[test]
fn minimality_separation_matches_oracle() {
    let spec = CycleSpec::default();
    for b in [0.5 + 1e-6, 0.55, 0.6, 0.65, 0.69] {
        let r = minimality_falsifier(
            &spec,
            Space::Full,
            Point2::new(b, 0.0).unwrap(),
            10_000,
            1e-9,
        )
        .unwrap();
        // X0 sweeps exactly [0.3, 0.5], so the nearest point is b1
        let n = 200_000;
        let grid = (0..n)
            .map(|k| (ox0(tau0() * k as f64 / n as f64) - b).abs())
            .fold(f64::INFINITY, f64::min);
        let m = r.get_constant("m").unwrap();
        assert_eq!(r.status, Status::Verified);
        assert!((m - (b - 0.5)).abs() < 1e-9, "{b}: {m}");
        assert!(grid >= m - 1e-12 && grid - m < 1e-4, "{b}: grid {grid}");
    }
}

#[test]
fn equicontinuity_worst_case_gap_matches_grid_oracle() {
    let spec = CycleSpec::default();
    let x = spec.solution(Family::X0, 0.0);
    let u = GaugeEntourage::single(0.0, 0.05).unwrap();
    let radius = 1e-3;
    let s_grid = 20;
    let r = equicontinuity_sweep(&spec, Space::Full, &x, &u, radius, s_grid, 1700).unwrap();
    assert_eq!(r.status, Status::Verified);
    let crate_gap = r.get_constant("worst_case_gap").unwrap();

    // oracle: for each gauge time, scan X phases in the ball and take the
    // best gap over a g grid; then the worst gauge time
    let mut oracle_gap = f64::INFINITY;
    for i in 0..s_grid {
        let s = tau0() * i as f64 / s_grid as f64;
        let mut best = 0.0f64;
        let n = 20_000;
        for k in 0..n {
            let v = tau() * k as f64 / n as f64;
            if (ox(v + s) - ox0(s)).abs() >= radius {
                continue;
            }
            for j in 0..400 {
                let g = tau() * j as f64 / 400.0;
                best = best.max((ox(v + g) - ox0(g)).abs());
            }
        }
        oracle_gap = oracle_gap.min(best);
    }
    assert!(crate_gap >= 0.1, "{crate_gap}");
    assert!(
        (crate_gap - oracle_gap).abs() < 5e-3,
        "{crate_gap} vs {oracle_gap}"
    );
    // frozen reference: the ball always holds an X solution that separates
    // from X0 by nearly b2 - b1
    assert!((crate_gap - 0.4).abs() < 5e-3, "{crate_gap}");
}

#[test]
fn transitivity_witnesses_are_valid_under_oracle() {
    let spec = CycleSpec::default();
    let r = transitivity_check(&spec, Space::Full, 200, 1e-9, 7);
    assert_eq!(r.status, Status::Verified);
    for w in &r.witnesses {
        let mover = w.get("mover").unwrap().as_solution().unwrap();
        let s = w.get("s").unwrap().as_real().unwrap();
        let c2 = w.get("y2_center").unwrap().as_solution().unwrap();
        let t2 = w.get("y2_t").unwrap().as_real().unwrap();
        let r2 = w.get("y2_radius").unwrap().as_real().unwrap();
        let f = |fam: Family| {
            if fam == Family::X {
                ox as fn(f64) -> f64
            } else {
                ox0
            }
        };
        let moved = f(mover.family())(mover.phase() + s + t2);
        let target = f(c2.family())(c2.phase() + t2);
        assert!((moved - target).abs() < r2, "{}", w.label);
    }
}

#[test]
fn anchored_pairs_respect_the_speed_ratio_bound() {
    use gaugeflow_core::action::act;
    use gaugeflow_core::gauge_dist;
    let spec = CycleSpec::default();
    let anchor = spec.solution(Family::X, tau() / 2.0);
    for delta in [1e-2, 1e-3, 1e-4] {
        for side in [-1.0, 1.0] {
            let y = spec.solution(Family::X, tau() / 2.0 + side * delta);
            let d0 = gauge_dist(&spec, 0.0, &anchor, &y);
            let bound = 7.0 / 3.0 * d0 * (1.0 + 10.0 * delta);
            for k in 0..20_000 {
                let t = 3.0 * tau() * k as f64 / 20_000.0;
                let gap = gauge_dist(&spec, t, &anchor, &y);
                assert!(gap <= bound, "delta {delta}, t {t}: {gap} > {bound}");
                let shifted = gauge_dist(&spec, 0.0, &act(&spec, t, &anchor), &act(&spec, t, &y));
                assert!((shifted - gap).abs() < 1e-15);
            }
        }
    }
}
