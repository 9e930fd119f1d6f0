//! Shared helpers for the criterion benchmarks.

use biased_cube::{Bias, TableFunction};

/// Deterministic pseudo-random table without pulling a generator into the
/// measured section.
pub fn mixed_table(bias: Bias, n: usize) -> TableFunction {
    TableFunction::from_fn(bias, n, |m| {
        let x = m.wrapping_mul(2654435761) as f64 / u32::MAX as f64;
        2.0 * x - 1.0
    })
    .expect("valid dimensions")
}
