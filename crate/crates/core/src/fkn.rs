//! Closeness of Boolean functions to degree-one functions of a single
//! coordinate: the witness extraction, the `d <= 8 sqrt(rho)` and
//! `d <= 2 rho` bounds, the sign-rounding table, and the explicit
//! two-variable function showing the smallness condition on `rho` is needed.

use crate::cube::{Bias, TableFunction};
use crate::error::{Error, Result};
use crate::fourier::{transform, Spectrum};

/// Inequality slack used by the bound flags.
pub const SLACK: f64 = 1e-10;

/// Sign with the convention `sgn(0) = +1`.
pub fn sgn(x: f64) -> f64 {
    if x < 0.0 {
        -1.0
    } else {
        1.0
    }
}

/// Best single-coordinate degree-one approximation of a Boolean function.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FknReport {
    /// Witness coordinate (0-based): the `i` maximizing `|a_{i}|`,
    /// ties broken towards the smallest index.
    pub k: usize,
    /// `a_∅`.
    pub a_empty: f64,
    /// `a_{k}`.
    pub a_k: f64,
    /// `||f - (a_∅ + a_k w_k)||_2`, computed in the value domain and
    /// cross-checked against `sqrt(1 - a_∅^2 - a_k^2)`.
    pub d: f64,
    /// Spectral tail above level one.
    pub rho: f64,
    /// `rho * ln(e / rho)`, with the continuous extension 0 at `rho = 0`.
    pub condition_lhs: f64,
    /// `d <= 8 sqrt(rho)` (within slack).
    pub within_8_sqrt_rho: bool,
    /// `d <= 2 rho` (within slack); only meaningful when the smallness
    /// condition applies, see [`check_conditional_bound`].
    pub within_2_rho: bool,
}

/// `rho * ln(e / rho)` extended continuously by 0 at `rho = 0`.
pub fn smallness_condition_lhs(rho: f64) -> f64 {
    if rho == 0.0 {
        0.0
    } else {
        rho * (std::f64::consts::E / rho).ln()
    }
}

fn require_boolean(f: &TableFunction) -> Result<()> {
    if !f.is_boolean() {
        return Err(Error::NotBoolean);
    }
    Ok(())
}

fn witness_coordinate(s: &Spectrum) -> usize {
    let mut best = 0usize;
    let mut best_abs = f64::NEG_INFINITY;
    for i in 0..s.n() {
        let a = s.singleton_coeff(i).abs();
        if a > best_abs {
            best_abs = a;
            best = i;
        }
    }
    best
}

/// Extracts the FKN witness of a Boolean function.
///
/// The distance is computed twice: spectrally as `sqrt(1 - a_∅^2 - a_k^2)`
/// and directly as an L2 norm over the table. Disagreement beyond 1e-9 is
/// reported as an internal inconsistency rather than absorbed into
/// tolerances.
pub fn fkn_witness(f: &TableFunction) -> Result<FknReport> {
    require_boolean(f)?;
    let s = transform(f);
    let k = witness_coordinate(&s);
    let a_empty = s.constant_coeff();
    let a_k = s.singleton_coeff(k);
    let rho = s.rho();

    // Spectral route: the residual's coefficients are every a_T except the
    // two kept ones, so d^2 is their square sum. (The Boolean identity
    // d^2 = 1 - a_∅^2 - a_k^2 is equivalent by Parseval but cancels
    // catastrophically near d = 0; it is asserted separately in tests.)
    let d_spectral = s
        .coeffs()
        .iter()
        .enumerate()
        .filter(|(t, _)| *t != 0 && *t != 1usize << k)
        .map(|(_, a)| a * a)
        .sum::<f64>()
        .sqrt();
    let wp = f.weights_by_popcount();
    let d2_direct: f64 = f
        .values()
        .iter()
        .enumerate()
        .map(|(m, &v)| {
            let xk = f.coordinate_value(m as u32, k);
            let r = v - a_empty - a_k * xk;
            wp[(m as u32).count_ones() as usize] * r * r
        })
        .sum();
    let d = d2_direct.sqrt();
    if (d - d_spectral).abs() > 1e-9 {
        return Err(Error::Inconsistency(format!(
            "witness distance mismatch: direct {d} vs spectral {d_spectral}"
        )));
    }

    Ok(FknReport {
        k,
        a_empty,
        a_k,
        d,
        rho,
        condition_lhs: smallness_condition_lhs(rho),
        within_8_sqrt_rho: d <= 8.0 * rho.sqrt() + SLACK,
        within_2_rho: d <= 2.0 * rho + SLACK,
    })
}

/// The sign-rounding residual `f - sgn(a_∅ + a_k x_k)` with the proof's two
/// inequalities evaluated on it.
#[derive(Debug, Clone, PartialEq)]
pub struct SignResidual {
    /// The `{-2, 0, 2}`-valued residual table.
    pub table: TableFunction,
    /// `||f - sgn(a_∅ + a_k x_k)||_2`.
    pub norm: f64,
    /// `||f - (a_∅ + a_k x_k)||_2 = d`.
    pub h_norm: f64,
    /// `P(residual != 0)`; the residual entries are exact sums of table
    /// entries so the comparison with 0 is exact.
    pub nonzero_probability: f64,
    /// `|f - sgn(u)| <= 2 |f - u|` held at every point.
    pub pointwise_holds: bool,
    /// `P(residual != 0) <= d^2` (within slack).
    pub mass_holds: bool,
}

/// Builds `f - sgn(a_∅ + a_k x_k)` and checks the rounding inequalities.
pub fn sign_residual(f: &TableFunction, report: &FknReport) -> Result<SignResidual> {
    require_boolean(f)?;
    let k = report.k;
    let n = f.n();
    let bias = f.bias();
    let mut pointwise_holds = true;
    let values: Vec<f64> = (0..1u32 << n)
        .map(|m| {
            let u = report.a_empty + report.a_k * f.coordinate_value(m, k);
            let v = f.value(m);
            let res = v - sgn(u);
            if res.abs() > 2.0 * (v - u).abs() + SLACK {
                pointwise_holds = false;
            }
            res
        })
        .collect();
    let table = TableFunction::new(bias, n, values)?;
    let norm = table.l2_norm();
    let wp = table.weights_by_popcount();
    let nonzero_probability: f64 = table
        .values()
        .iter()
        .enumerate()
        .filter(|(_, &v)| v != 0.0)
        .map(|(m, _)| wp[(m as u32).count_ones() as usize])
        .sum();
    let mass_holds = nonzero_probability <= report.d * report.d + SLACK;
    Ok(SignResidual {
        table,
        norm,
        h_norm: report.d,
        nonzero_probability,
        pointwise_holds,
        mass_holds,
    })
}

/// Result of testing `d <= 2 rho` under the smallness condition
/// `rho ln(e/rho) < c0 alpha`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConditionalBoundCheck {
    pub applicable: bool,
    /// `d <= 2 rho` (within slack); `true` whenever not applicable.
    pub holds: bool,
    /// `d / rho`; 0 when both vanish, infinity if `rho = 0 < d` (which a
    /// Boolean function cannot produce).
    pub ratio: f64,
    pub rho: f64,
    pub d: f64,
    pub condition_lhs: f64,
}

/// Checks the conditional improvement `d <= 2 rho` for one Boolean table.
pub fn check_conditional_bound(f: &TableFunction, c0: f64) -> Result<ConditionalBoundCheck> {
    if !c0.is_finite() || c0 <= 0.0 {
        return Err(Error::InvalidC0(c0));
    }
    let report = fkn_witness(f)?;
    let applicable = report.condition_lhs < c0 * f.bias().alpha();
    let ratio = if report.rho > 0.0 {
        report.d / report.rho
    } else if report.d <= SLACK {
        0.0
    } else {
        f64::INFINITY
    };
    Ok(ConditionalBoundCheck {
        applicable,
        holds: !applicable || report.d <= 2.0 * report.rho + SLACK,
        ratio,
        rho: report.rho,
        d: report.d,
        condition_lhs: report.condition_lhs,
    })
}

/// The two-variable Boolean function
/// `f(x1, x2) = 2 (beta - sqrt(alpha beta) x1)(beta - sqrt(alpha beta) x2) - 1`,
/// equal to +1 exactly when both coordinates sit at the low point.
///
/// Its tail is `rho = 2 alpha beta` while `d / rho = 1 / sqrt(alpha)`, so no
/// bound of the form `rho <= alpha` can force `d <= 2 rho`.
#[derive(Debug, Clone, PartialEq)]
pub struct Counterexample {
    pub table: TableFunction,
    /// Set when built on the symmetric cube, where the construction loses
    /// its point (the ratio `d / rho` stays bounded).
    pub degenerate: bool,
}

pub fn counterexample(bias: Bias) -> Counterexample {
    let beta = bias.beta();
    let sab = bias.sqrt_ab();
    let value = |m: u32| {
        let x1 = if m & 1 == 1 {
            bias.high_value()
        } else {
            bias.low_value()
        };
        let x2 = if m >> 1 & 1 == 1 {
            bias.high_value()
        } else {
            bias.low_value()
        };
        let raw = 2.0 * (beta - sab * x1) * (beta - sab * x2) - 1.0;
        // The factors are 1 at the low point and 0 at the high point up to
        // one rounding; snap to the exact Boolean value.
        if raw > 0.0 {
            1.0
        } else {
            -1.0
        }
    };
    let table = TableFunction::from_fn(bias, 2, value).expect("n = 2 is valid");
    Counterexample {
        table,
        degenerate: bias.is_symmetric(),
    }
}
