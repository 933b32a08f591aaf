use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::cycle::{CycleSpec, Solution, Space};

pub(crate) fn rng_from_seed(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A uniformly random family (within `space`) and phase.
pub(crate) fn random_solution<R: Rng>(rng: &mut R, spec: &CycleSpec, space: Space) -> Solution {
    let families = space.families();
    let family = families[rng.gen_range(0..families.len())];
    let phase = rng.gen_range(0.0..spec.period(family));
    spec.solution(family, phase)
}

/// `n` equally spaced points of `[0, period)` starting at 0.
pub(crate) fn phase_grid(period: f64, n: usize) -> impl Iterator<Item = f64> {
    (0..n).map(move |i| period * i as f64 / n as f64)
}

/// `{start, start + step, ...}` up to and including `end` (within rounding).
pub(crate) fn stepped(start: f64, end: f64, step: f64) -> Vec<f64> {
    let n = ((end - start) / step + 1e-9).floor() as usize;
    (0..=n).map(|i| start + step * i as f64).collect()
}
