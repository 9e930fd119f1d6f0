//! The biased hypercontractivity constant and the level-damping inequality
//! `|| sum c_q^{|T|} a_T w_T ||_2 <= || f ||_q` for `q in [1, 2]`.

use crate::cube::{Bias, TableFunction};
use crate::error::{Error, Result};
use crate::fourier::transform;

/// Absolute slack applied on inequality checks; both sides are O(1) for the
/// tested families.
pub const SLACK: f64 = 1e-10;

/// Damping constant together with the inputs it was derived from.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HyperParams {
    pub q: f64,
    pub bias: Bias,
    pub cq: f64,
}

impl HyperParams {
    pub fn new(bias: Bias, q: f64) -> Result<Self> {
        Ok(HyperParams {
            q,
            bias,
            cq: c_q(bias, q)?,
        })
    }
}

/// The damping constant `c_q(alpha, beta)`.
///
/// For `alpha < 1/2` this evaluates
/// `sqrt((beta^(2-2/q) - alpha^(2-2/q)) / (alpha beta (alpha^(-2/q) - beta^(-2/q))))`.
/// The quotient is 0/0 at `alpha = 1/2`, where the closed limit `sqrt(q-1)`
/// is returned instead.
pub fn c_q(bias: Bias, q: f64) -> Result<f64> {
    if !q.is_finite() || !(1.0..=2.0).contains(&q) {
        return Err(Error::InvalidQ(q));
    }
    if bias.is_symmetric() {
        return Ok((q - 1.0).sqrt());
    }
    let alpha = bias.alpha();
    let beta = bias.beta();
    let e = 2.0 - 2.0 / q;
    let num = beta.powf(e) - alpha.powf(e);
    let den = alpha * beta * (alpha.powf(-2.0 / q) - beta.powf(-2.0 / q));
    if num == 0.0 {
        // q = 1 makes the numerator exponent zero.
        return Ok(0.0);
    }
    Ok((num / den).sqrt())
}

/// Both sides of the hypercontractive inequality for one function.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HyperCheck {
    /// `sqrt(sum c_q^{2|T|} a_T^2)`.
    pub lhs: f64,
    /// `||f||_q`.
    pub rhs: f64,
    pub holds: bool,
}

/// Evaluates the inequality on a concrete table.
pub fn verify_hyper(f: &TableFunction, q: f64) -> Result<HyperCheck> {
    let spectrum = transform(f);
    verify_hyper_spectral(f, &spectrum, q)
}

/// Same as [`verify_hyper`] but reuses an already computed spectrum, which
/// sweep drivers exploit when scanning many `q` for one function.
pub fn verify_hyper_spectral(
    f: &TableFunction,
    spectrum: &crate::fourier::Spectrum,
    q: f64,
) -> Result<HyperCheck> {
    let cq = c_q(f.bias(), q)?;
    let cq2 = cq * cq;
    // cq^{2k} by level; 0^0 = 1 keeps the constant term undamped at q = 1.
    let n = f.n();
    let mut damp = vec![1.0; n + 1];
    for k in 1..=n {
        damp[k] = damp[k - 1] * cq2;
    }
    let lhs = spectrum
        .coeffs()
        .iter()
        .enumerate()
        .map(|(t, a)| damp[(t as u32).count_ones() as usize] * a * a)
        .sum::<f64>()
        .sqrt();
    let rhs = f.lp_norm(q)?;
    Ok(HyperCheck {
        lhs,
        rhs,
        holds: lhs <= rhs + SLACK,
    })
}
