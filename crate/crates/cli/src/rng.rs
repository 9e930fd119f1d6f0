//! Reproducible instance generation. Every campaign instance gets its own
//! ChaCha stream keyed by `(seed, instance index)`, so parallel workers
//! produce the same draws regardless of scheduling.

use biased_cube::{Bias, TableFunction};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Generator for instance `index` of a campaign with the given seed.
pub fn instance_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

/// A `{-1,+1}`-valued table with a fair coin per point.
pub fn boolean_table(bias: Bias, n: usize, rng: &mut ChaCha8Rng) -> TableFunction {
    TableFunction::from_fn(bias, n, |_| if rng.gen_bool(0.5) { 1.0 } else { -1.0 })
        .expect("valid dimensions")
}

/// A table with values uniform in `[-1, 1]` per point.
pub fn bounded_table(bias: Bias, n: usize, rng: &mut ChaCha8Rng) -> TableFunction {
    TableFunction::from_fn(bias, n, |_| rng.gen_range(-1.0..=1.0)).expect("valid dimensions")
}

/// Raw coefficients for a Rademacher sum: uniform in `(0, 1]`.
pub fn raw_coefficients(n: usize, rng: &mut ChaCha8Rng) -> Vec<f64> {
    (0..n).map(|_| 1.0 - rng.gen_range(0.0..1.0)).collect()
}
