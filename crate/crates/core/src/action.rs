//! The time-shift action `T(s, y)(u) = y(s + u)` of `(ℝ, +)` on `D`, its
//! stabilizers and the two syndeticity notions for periodic points.

use serde::{Deserialize, Serialize};

use crate::cycle::{CycleSpec, Solution};

/// `T(s, sol)`: same family, phase advanced by `s`.
pub fn act(spec: &CycleSpec, s: f64, sol: &Solution) -> Solution {
    spec.solution(sol.family(), sol.phase() + s)
}

/// Generator `p` of the stabilizer `S_T(sol) = pℤ`, the period of the
/// solution's family.
pub fn stabilizer_generator(spec: &CycleSpec, sol: &Solution) -> f64 {
    spec.period(sol.family())
}

/// Whether `sol` is fixed by the stabilizer generator, sampled at
/// `n_samples` times.
pub fn is_periodic(spec: &CycleSpec, sol: &Solution, tol: f64, n_samples: usize) -> bool {
    is_periodic_with(spec, sol, stabilizer_generator(spec, sol), tol, n_samples)
}

/// Whether `sol(t + generator) = sol(t)` within `tol` on a sample grid
/// covering five periods on either side of zero.
pub fn is_periodic_with(
    spec: &CycleSpec,
    sol: &Solution,
    generator: f64,
    tol: f64,
    n_samples: usize,
) -> bool {
    periodicity_gap(spec, sol, generator, n_samples) < tol
}

/// `max_t |sol(t + generator) - sol(t)|` over the sample grid used by
/// [`is_periodic_with`].
pub fn periodicity_gap(spec: &CycleSpec, sol: &Solution, generator: f64, n_samples: usize) -> f64 {
    let span = 10.0 * spec.period(sol.family());
    let n = n_samples.max(1);
    (0..n)
        .map(|i| {
            let t = -span / 2.0 + span * (i as f64 + 0.5) / n as f64;
            spec.eval(sol, t + generator).dist(spec.eval(sol, t))
        })
        .fold(0.0, f64::max)
}

/// The compact set `K = [0, kappa]` witnessing syndeticity.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SyndeticWitness {
    kappa: f64,
}

impl SyndeticWitness {
    pub fn new(kappa: f64) -> Option<Self> {
        (kappa.is_finite() && kappa > 0.0).then_some(SyndeticWitness { kappa })
    }

    pub fn kappa(&self) -> f64 {
        self.kappa
    }

    /// The exact criterion for `pℤ` with this `K`, under either notion.
    pub fn covers_period(&self, generator: f64) -> bool {
        self.kappa >= generator
    }
}

/// Right syndeticity of `pℤ`: every grid `t` lies in `⋃_{k∈K} k⁻¹S`, i.e.
/// the next multiple of `p` at or after `t` is within `kappa`.
pub fn right_syndetic_check(generator: f64, k: SyndeticWitness, t_grid: &[f64]) -> bool {
    t_grid.iter().all(|&t| {
        let next = (t / generator).ceil() * generator;
        next - t <= k.kappa
    })
}

/// Syndeticity of `pℤ`: `Kt ∩ pℤ ≠ ∅` for every grid `t`, with
/// `Kt = {k + t}`; the smallest admissible `k` is `(-t) mod p`.
pub fn syndetic_check(generator: f64, k: SyndeticWitness, t_grid: &[f64]) -> bool {
    t_grid
        .iter()
        .all(|&t| (-t).rem_euclid(generator) <= k.kappa)
}

/// Symmetric grid `[-span, span]` with `2 * steps_per_side + 1` points.
pub fn symmetric_grid(span: f64, steps_per_side: usize) -> Vec<f64> {
    let n = steps_per_side as i64;
    (-n..=n)
        .map(|i| span * i as f64 / steps_per_side as f64)
        .collect()
}

/// The default syndeticity grid: `[-10τ, 10τ]` with step `τ/100`.
pub fn default_syndetic_grid(spec: &CycleSpec) -> Vec<f64> {
    symmetric_grid(10.0 * spec.tau(), 1000)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cycle::Family;
    use crate::gauge::gauge_dist;
    use approx::assert_abs_diff_eq;
    use proptest::prelude::*;

    #[test]
    fn act_examples() {
        let spec = CycleSpec::default();
        let sol = spec.solution(Family::X, 0.4);
        assert_eq!(act(&spec, 0.0, &sol), sol);
        assert!(spec.same_solution(&act(&spec, spec.tau(), &sol), &sol));
        let moved = act(&spec, (7.0f64 / 5.0).ln(), &spec.solution(Family::X, 0.0));
        assert_abs_diff_eq!(spec.eval(&moved, 0.0).x(), 0.5, epsilon = 1e-15);
    }

    #[test]
    fn stabilizer_examples() {
        let spec = CycleSpec::default();
        let x = spec.solution(Family::X, 0.9);
        let x0 = spec.solution(Family::X0, 0.2);
        assert_abs_diff_eq!(
            stabilizer_generator(&spec, &x),
            2.0 * (7.0f64 / 3.0).ln(),
            epsilon = 1e-14
        );
        assert_abs_diff_eq!(
            stabilizer_generator(&spec, &x0),
            spec.tau() / 2.0,
            epsilon = 1e-12
        );
        let half = act(&spec, spec.tau() / 2.0, &x);
        assert!(!spec.same_solution(&half, &x));
        for i in 0..100 {
            let y = spec.solution(Family::X, spec.tau() * i as f64 / 100.0);
            assert!(periodicity_gap(&spec, &y, spec.tau() / 2.0, 200) > 0.1);
        }
    }

    #[test]
    fn periodicity_examples() {
        let spec = CycleSpec::default();
        let x = spec.solution(Family::X, 1.3);
        let x0 = spec.solution(Family::X0, 0.3);
        assert!(is_periodic(&spec, &x, 1e-12, 1000));
        assert!(is_periodic(&spec, &x0, 1e-12, 1000));
        assert!(!is_periodic_with(&spec, &x, spec.tau() * 1.01, 1e-12, 1000));
        assert!(!is_periodic_with(&spec, &x, spec.tau() / 2.0, 1e-12, 1000));
    }

    #[test]
    fn stabilizer_is_minimal_over_divisors() {
        let spec = CycleSpec::default();
        for fam in Family::ALL {
            let sol = spec.solution(fam, 0.1);
            let p = stabilizer_generator(&spec, &sol);
            for k in 2..=12 {
                assert!(!is_periodic_with(&spec, &sol, p / k as f64, 1e-12, 1000));
            }
        }
    }

    #[test]
    fn syndetic_examples() {
        let spec = CycleSpec::default();
        let tau = spec.tau();
        let grid = default_syndetic_grid(&spec);
        let k_tau = SyndeticWitness::new(tau).unwrap();
        assert!(right_syndetic_check(tau, k_tau, &grid));
        assert!(syndetic_check(tau, k_tau, &grid));
        assert!(k_tau.covers_period(tau));

        let k_third = SyndeticWitness::new(tau / 3.0).unwrap();
        assert!(!right_syndetic_check(tau, k_third, &[-tau / 2.0]));
        assert!(!syndetic_check(tau, k_third, &[-tau / 2.0]));

        assert!(right_syndetic_check(tau / 2.0, k_tau, &grid));
        assert!(syndetic_check(tau / 2.0, k_tau, &grid));

        let k_small = SyndeticWitness::new(0.1 * tau).unwrap();
        assert!(!syndetic_check(tau, k_small, &[0.5 * tau]));
        assert!(!right_syndetic_check(tau, k_small, &[0.5 * tau]));
        assert!(!k_small.covers_period(tau));

        assert!(SyndeticWitness::new(0.0).is_none());
    }

    #[test]
    fn syndetic_grid_shape() {
        let spec = CycleSpec::default();
        let g = default_syndetic_grid(&spec);
        assert_eq!(g.len(), 2001);
        assert_abs_diff_eq!(g[0], -10.0 * spec.tau(), epsilon = 1e-12);
        assert_abs_diff_eq!(g[2000], 10.0 * spec.tau(), epsilon = 1e-12);
        assert_abs_diff_eq!(g[1] - g[0], spec.tau() / 100.0, epsilon = 1e-12);
    }

    proptest! {
        #[test]
        fn action_laws(r in -50.0..50.0f64, s in -50.0..50.0f64, phase in 0.0..2.0f64, fam0 in any::<bool>()) {
            let spec = CycleSpec::default();
            let fam = if fam0 { Family::X0 } else { Family::X };
            let x = spec.solution(fam, phase);
            prop_assert!(spec.same_solution(&act(&spec, r, &act(&spec, s, &x)), &act(&spec, r + s, &x)));
            prop_assert_eq!(act(&spec, 0.0, &x), x);
        }

        #[test]
        fn eval_compatibility(s in -20.0..20.0f64, u in -20.0..20.0f64, phase in 0.0..2.0f64) {
            let spec = CycleSpec::default();
            let x = spec.solution(Family::X, phase);
            let d = spec.eval(&act(&spec, s, &x), u).dist(spec.eval(&x, s + u));
            prop_assert!(d < 1e-12);
        }

        #[test]
        fn shift_identity(g in -5.0..5.0f64, t in -5.0..5.0f64, pa in 0.0..2.0f64, pb in 0.0..1.0f64) {
            let spec = CycleSpec::default();
            let a = spec.solution(Family::X, pa);
            let b = spec.solution(Family::X0, pb);
            let lhs = gauge_dist(&spec, t, &act(&spec, g, &a), &act(&spec, g, &b));
            let rhs = gauge_dist(&spec, t + g, &a, &b);
            prop_assert!((lhs - rhs).abs() < 1e-12);
        }
    }
}
