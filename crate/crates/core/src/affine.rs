//! Distance from bounded functions on the symmetric cube to the affine
//! class and to the `[-1,1]`-valued affine class, together with the
//! Rademacher-sum toolbox that powers the constructive bound: exact moments,
//! the small-ball and tail-norm lemmas, the moment-comparison ratio, the
//! prefix split, and the truncated-sum example family.
//!
//! Everything here lives on the symmetric cube (`alpha = 1/2`); the Fourier
//! basis there is the classical Walsh system and sign patterns carry equal
//! weight `2^-n`.

use crate::cube::{Bias, TableFunction, MAX_N};
use crate::error::{Error, Result};
use crate::fourier::{transform, Spectrum};

/// Inequality slack for the checks in this module.
pub const SLACK: f64 = 1e-10;

/// Clamp to `[-1, 1]`.
pub fn phi(x: f64) -> f64 {
    x.clamp(-1.0, 1.0)
}

/// An affine function `a0 + sum a_i x_i` given by its coefficients.
#[derive(Debug, Clone, PartialEq)]
pub struct AffineFunction {
    pub a0: f64,
    pub coeffs: Vec<f64>,
}

impl AffineFunction {
    pub fn new(a0: f64, coeffs: Vec<f64>) -> Self {
        AffineFunction { a0, coeffs }
    }

    pub fn zero(n: usize) -> Self {
        AffineFunction {
            a0: 0.0,
            coeffs: vec![0.0; n],
        }
    }

    pub fn n(&self) -> usize {
        self.coeffs.len()
    }

    /// `|a0| + sum |a_i|`.
    pub fn l1_norm(&self) -> f64 {
        self.a0.abs() + self.coeffs.iter().map(|a| a.abs()).sum::<f64>()
    }

    /// Membership in the `[-1,1]`-valued class: `l1_norm() <= 1`.
    pub fn is_bounded(&self) -> bool {
        self.l1_norm() <= 1.0
    }

    /// Value at the point of the symmetric cube encoded by `mask`.
    pub fn eval_sym(&self, mask: u32) -> f64 {
        let mut s = self.a0;
        for (i, a) in self.coeffs.iter().enumerate() {
            s += if mask >> i & 1 == 1 { *a } else { -*a };
        }
        s
    }

    /// Tabulates the function on the given cube.
    pub fn to_table(&self, bias: Bias) -> Result<TableFunction> {
        TableFunction::from_fn(bias, self.n(), |m| {
            let mut s = self.a0;
            for (i, a) in self.coeffs.iter().enumerate() {
                s += a * if m >> i & 1 == 1 {
                    bias.high_value()
                } else {
                    bias.low_value()
                };
            }
            s
        })
    }

    /// `[a0, a_1, ..., a_n]` as one flat vector.
    pub fn coefficient_vector(&self) -> Vec<f64> {
        let mut v = Vec::with_capacity(self.n() + 1);
        v.push(self.a0);
        v.extend_from_slice(&self.coeffs);
        v
    }

    pub fn from_coefficient_vector(v: &[f64]) -> Self {
        AffineFunction {
            a0: v[0],
            coeffs: v[1..].to_vec(),
        }
    }

    /// The degree-at-most-one part of a spectrum.
    pub fn from_spectrum(s: &Spectrum) -> Self {
        let (a0, coeffs) = s.affine_part();
        AffineFunction { a0, coeffs }
    }
}

/// Euclidean projection onto the l1 ball of the given radius.
///
/// Feasible inputs are returned unchanged; otherwise the unique
/// soft-threshold `v_i -> sign(v_i) max(|v_i| - theta, 0)` with the theta
/// that lands exactly on the sphere, found by the sort-based scan in
/// `O(n log n)`.
pub fn project_l1(v: &[f64], radius: f64) -> Result<Vec<f64>> {
    if !radius.is_finite() || radius <= 0.0 {
        return Err(Error::InvalidRadius(radius));
    }
    if v.iter().any(|x| !x.is_finite()) {
        return Err(Error::NonFiniteValue);
    }
    let l1: f64 = v.iter().map(|x| x.abs()).sum();
    if l1 <= radius {
        return Ok(v.to_vec());
    }
    let mut u: Vec<f64> = v.iter().map(|x| x.abs()).collect();
    u.sort_by(|a, b| b.partial_cmp(a).expect("finite"));
    let mut css = 0.0;
    let mut theta = 0.0;
    for (j, &uj) in u.iter().enumerate() {
        css += uj;
        let t = (css - radius) / (j + 1) as f64;
        if uj - t > 0.0 {
            theta = t;
        }
    }
    Ok(v.iter()
        .map(|&x| x.signum() * (x.abs() - theta).max(0.0))
        .collect())
}

/// A distance to a class together with the function realizing it.
#[derive(Debug, Clone, PartialEq)]
pub struct AffineFit {
    pub dist: f64,
    pub minimizer: AffineFunction,
}

fn require_symmetric(f: &TableFunction) -> Result<()> {
    if !f.bias().is_symmetric() {
        return Err(Error::NotSymmetric);
    }
    Ok(())
}

fn require_bounded(f: &TableFunction) -> Result<()> {
    if !f.is_bounded() {
        return Err(Error::ValueOutOfRange);
    }
    Ok(())
}

/// L2 distance to the affine class: the orthogonal-projection residual
/// `rho` together with the projection itself.
pub fn dist_to_affine(f: &TableFunction) -> Result<AffineFit> {
    require_symmetric(f)?;
    let s = transform(f);
    Ok(AffineFit {
        dist: s.rho(),
        minimizer: AffineFunction::from_spectrum(&s),
    })
}

/// Exact L2 distance to the `[-1,1]`-valued affine class.
///
/// By orthonormality the problem separates:
/// `dist^2 = rho^2 + || c - P(c) ||^2` where `c` is the level-<=1
/// coefficient vector and `P` the l1-ball projection. The minimizer is the
/// projected vector, not just an upper-bound construction.
pub fn dist_to_bounded_affine(f: &TableFunction) -> Result<AffineFit> {
    require_symmetric(f)?;
    let s = transform(f);
    let rho = s.rho();
    let c = AffineFunction::from_spectrum(&s).coefficient_vector();
    let p = project_l1(&c, 1.0)?;
    let excess: f64 = c.iter().zip(&p).map(|(a, b)| (a - b) * (a - b)).sum();
    Ok(AffineFit {
        dist: (rho * rho + excess).sqrt(),
        minimizer: AffineFunction::from_coefficient_vector(&p),
    })
}

/// Enumerates `offset + sum ±coeffs[i]` over all sign patterns in Gray-code
/// order, re-synchronizing periodically so the incremental sum cannot drift.
fn signed_sums(coeffs: &[f64], offset: f64, mut visit: impl FnMut(f64)) {
    let n = coeffs.len();
    debug_assert!(n <= MAX_N);
    let total: f64 = coeffs.iter().sum();
    let mut sum = offset - total;
    let mut signs: u32 = 0;
    visit(sum);
    for m in 1u64..1u64 << n {
        let i = m.trailing_zeros() as usize;
        signs ^= 1 << i;
        if m & 0xFFF == 0 {
            sum = offset
                + coeffs
                    .iter()
                    .enumerate()
                    .map(|(j, a)| if signs >> j & 1 == 1 { *a } else { -*a })
                    .sum::<f64>();
        } else {
            sum += if signs >> i & 1 == 1 {
                2.0 * coeffs[i]
            } else {
                -2.0 * coeffs[i]
            };
        }
        visit(sum);
    }
}

/// Result of the truncation-residual bound `E(|S|-1)_+^2 <= rho^2`, where
/// `S` is the affine projection of `f`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TruncationCheck {
    /// `E(|S|-1)_+^2`.
    pub excess_mass: f64,
    pub rho: f64,
    pub holds: bool,
}

/// Checks `E(|S|-1)_+^2 <= rho^2` for a `[-1,1]`-valued table.
pub fn check_truncation_bound(f: &TableFunction) -> Result<TruncationCheck> {
    require_symmetric(f)?;
    require_bounded(f)?;
    let fit = dist_to_affine(f)?;
    let s = &fit.minimizer;
    let scale = 1.0 / (1u64 << f.n()) as f64;
    let mut acc = 0.0;
    signed_sums(&s.coeffs, s.a0, |v| {
        let e = (v.abs() - 1.0).max(0.0);
        acc += e * e;
    });
    let excess_mass = acc * scale;
    Ok(TruncationCheck {
        excess_mass,
        rho: fit.dist,
        holds: excess_mass <= fit.dist * fit.dist + SLACK,
    })
}

/// Coefficients of a Rademacher sum `S = sum a_i r_i`, normalized at
/// construction to be nonnegative and sorted in descending order. Sign
/// flips and reordering leave every `L_p` norm and every tail probability
/// of `|S|` unchanged.
#[derive(Debug, Clone, PartialEq)]
pub struct RademacherSum {
    coeffs: Vec<f64>,
}

/// Small-ball probability against the L2 norm.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SmallBallCheck {
    /// `P(|S| >= ||S||_2)`, exact over the `2^n` sign patterns.
    pub prob: f64,
    /// `prob > 1/10`.
    pub holds: bool,
}

/// Both sides of `||S||_t >= (1/4) sqrt(t) (sum_{i>t} a_i^2)^(1/2)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TailNormCheck {
    pub lhs: f64,
    pub rhs: f64,
    pub holds: bool,
}

/// Both sides of the moment comparison
/// `(E|S|^{2t})^{1/2t} <= sqrt((2t-1)/(t-1)) (E|S|^t)^{1/t}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KhinchineCheck {
    pub lhs: f64,
    pub rhs: f64,
    pub holds: bool,
}

/// The sandwich `(1/4) sqrt(t) tail <= ||S||_t <= 2 + 4 rho ((2t-1)/(t-1))^{t/2}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NormTBound {
    pub lower: f64,
    pub norm_t: f64,
    pub upper: f64,
    /// Whether the hypothesis `E(|S|-1)_+^2 <= rho^2` held (the upper bound
    /// is only asserted then).
    pub applicable: bool,
    pub holds: bool,
}

impl RademacherSum {
    /// Normalizes raw coefficients: absolute values, sorted descending.
    pub fn new(raw: &[f64]) -> Result<Self> {
        if raw.is_empty() || raw.len() > MAX_N {
            return Err(Error::InvalidDimension {
                n: raw.len(),
                max: MAX_N,
            });
        }
        if raw.iter().any(|a| !a.is_finite()) {
            return Err(Error::NonFiniteValue);
        }
        let mut coeffs: Vec<f64> = raw.iter().map(|a| a.abs()).collect();
        coeffs.sort_by(|a, b| b.partial_cmp(a).expect("finite"));
        Ok(RademacherSum { coeffs })
    }

    pub fn n(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    /// `||S||_2 = sqrt(sum a_i^2)`.
    pub fn l2(&self) -> f64 {
        self.coeffs.iter().map(|a| a * a).sum::<f64>().sqrt()
    }

    fn mean_over_signs(&self, mut g: impl FnMut(f64) -> f64) -> f64 {
        let scale = 1.0 / (1u64 << self.n()) as f64;
        let mut acc = 0.0;
        signed_sums(&self.coeffs, 0.0, |v| acc += g(v));
        acc * scale
    }

    /// Exact `(E|S|^t)^{1/t}` over the `2^n` sign assignments.
    pub fn lp_norm(&self, t: f64) -> Result<f64> {
        if !t.is_finite() || t < 1.0 {
            return Err(Error::InvalidExponent(t));
        }
        let moment = if t.fract() == 0.0 && t <= 32.0 {
            let k = t as i32;
            self.mean_over_signs(|v| v.abs().powi(k))
        } else {
            self.mean_over_signs(|v| v.abs().powf(t))
        };
        Ok(moment.powf(1.0 / t))
    }

    /// `E(|S|-1)_+^2`, the mass sticking out of `[-1, 1]`.
    pub fn excess_mass(&self) -> f64 {
        self.mean_over_signs(|v| {
            let e = (v.abs() - 1.0).max(0.0);
            e * e
        })
    }

    /// Exact `P(|S| >= ||S||_2)` and the `> 1/10` small-ball bound.
    pub fn small_ball(&self) -> Result<SmallBallCheck> {
        if self.coeffs.iter().all(|&a| a == 0.0) {
            return Err(Error::ZeroCoefficients);
        }
        let threshold = self.l2();
        let prob = self.mean_over_signs(|v| if v.abs() >= threshold { 1.0 } else { 0.0 });
        Ok(SmallBallCheck {
            prob,
            holds: prob > 0.1,
        })
    }

    /// Squared tail `sum_{i > t} a_i^2` with 1-based sorted indices; a real
    /// `t` is read strictly, i.e. indices from `floor(t) + 1` on.
    pub fn tail_square_sum(&self, t: f64) -> f64 {
        let start = t.floor() as usize; // 0-based index of the first kept term
        self.coeffs.iter().skip(start).map(|a| a * a).sum()
    }

    /// Checks `||S||_t >= (1/4) sqrt(t) (sum_{i>t} a_i^2)^(1/2)`.
    pub fn tail_norm_check(&self, t: f64) -> Result<TailNormCheck> {
        let lhs = self.lp_norm(t)?;
        let rhs = 0.25 * t.sqrt() * self.tail_square_sum(t).sqrt();
        Ok(TailNormCheck {
            lhs,
            rhs,
            holds: lhs >= rhs - SLACK,
        })
    }

    /// Checks the moment comparison between `||S||_{2t}` and `||S||_t`
    /// for `t > 1`.
    pub fn khinchine_check(&self, t: f64) -> Result<KhinchineCheck> {
        if !t.is_finite() || t <= 1.0 {
            return Err(Error::ExponentNotAboveOne(t));
        }
        let lhs = self.lp_norm(2.0 * t)?;
        let rhs = ((2.0 * t - 1.0) / (t - 1.0)).sqrt() * self.lp_norm(t)?;
        Ok(KhinchineCheck {
            lhs,
            rhs,
            holds: lhs <= rhs + SLACK,
        })
    }

    /// Longest prefix of the sorted coefficients whose sum stays at most 1.
    /// Requires `a_1 <= 1`, which makes the result at least 1.
    pub fn tau(&self) -> Result<usize> {
        if self.coeffs[0] > 1.0 {
            return Err(Error::CoefficientTooLarge(self.coeffs[0]));
        }
        let mut prefix = self.coeffs[0];
        let mut t = 1;
        while t < self.n() && prefix + self.coeffs[t] <= 1.0 {
            prefix += self.coeffs[t];
            t += 1;
        }
        Ok(t)
    }

    /// Verifies the two-sided bound on `||S||_t` under the excess-mass
    /// hypothesis `E(|S|-1)_+^2 <= rho^2`.
    pub fn norm_t_bound(&self, rho: f64, t: f64) -> Result<NormTBound> {
        if !t.is_finite() || t <= 1.0 {
            return Err(Error::ExponentNotAboveOne(t));
        }
        if !rho.is_finite() || rho < 0.0 {
            return Err(Error::InvalidScale(rho));
        }
        let applicable = self.excess_mass() <= rho * rho;
        let norm_t = self.lp_norm(t)?;
        let lower = 0.25 * t.sqrt() * self.tail_square_sum(t).sqrt();
        let upper = 2.0 + 4.0 * rho * ((2.0 * t - 1.0) / (t - 1.0)).powf(t / 2.0);
        let holds = lower <= norm_t + SLACK && (!applicable || norm_t <= upper + SLACK);
        Ok(NormTBound {
            lower,
            norm_t,
            upper,
            applicable,
            holds,
        })
    }
}

/// Branch threshold base and headline constant for the constructive bound.
/// The two calibrated pairs are `(3, 18)` and `(2.03, 14.5)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WitnessParams {
    /// Base of the branch threshold `(2 / ln base) ln(1 / rho)`.
    pub base: f64,
    /// Numerator of the headline bound `constant / sqrt(ln(1 / rho))`.
    pub constant: f64,
}

impl WitnessParams {
    pub const STANDARD: WitnessParams = WitnessParams {
        base: 3.0,
        constant: 18.0,
    };
    pub const SHARPENED: WitnessParams = WitnessParams {
        base: 2.03,
        constant: 14.5,
    };

    /// Looks up the constant paired with a known base.
    pub fn for_base(base: f64) -> Option<Self> {
        if base == 3.0 {
            Some(Self::STANDARD)
        } else if base == 2.03 {
            Some(Self::SHARPENED)
        } else {
            None
        }
    }
}

impl Default for WitnessParams {
    fn default() -> Self {
        Self::STANDARD
    }
}

/// Which construction produced the bounded-affine witness.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WitnessBranch {
    /// The affine projection already has l1 norm at most 1.
    InBall,
    /// `rho >= 1/3`: the zero function and the trivial `dist <= 1` estimate.
    ZeroFunction,
    /// Prefix of the largest coefficients, kept whole.
    Head,
    /// Prefix of length tau plus a remainder coefficient on the next
    /// coordinate.
    Split,
}

impl WitnessBranch {
    pub fn name(&self) -> &'static str {
        match self {
            WitnessBranch::InBall => "in_ball",
            WitnessBranch::ZeroFunction => "zero_function",
            WitnessBranch::Head => "head",
            WitnessBranch::Split => "split",
        }
    }
}

/// Deviation of the split construction from the projection, with its bound
/// `sqrt(20) rho^(1 - ln2/ln base)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SplitCheck {
    pub deviation: f64,
    pub bound: f64,
    pub holds: bool,
}

/// Constructive witness for the bounded-affine distance bound.
#[derive(Debug, Clone, PartialEq)]
pub struct WitnessReport {
    pub rho: f64,
    /// Exact distance to the bounded affine class.
    pub dist: f64,
    /// `constant / sqrt(ln(1/rho))`.
    pub bound: f64,
    pub branch: WitnessBranch,
    pub construction: AffineFunction,
    /// `||f - construction||_2`; at least `dist` since the construction is
    /// feasible.
    pub construction_dist: f64,
    /// Populated on the [`WitnessBranch::Split`] branch.
    pub split: Option<SplitCheck>,
    pub holds: bool,
}

/// Runs the constructive argument on one `[-1,1]`-valued table and compares
/// it against the exact projection distance.
pub fn bounded_affine_witness(f: &TableFunction, params: WitnessParams) -> Result<WitnessReport> {
    require_symmetric(f)?;
    require_bounded(f)?;
    let params_valid = params.base.is_finite()
        && params.base > 1.0
        && params.constant.is_finite()
        && params.constant > 0.0;
    if !params_valid {
        return Err(Error::InvalidScale(params.base));
    }
    let s = transform(f);
    let rho = s.rho();
    let exact = dist_to_bounded_affine(f)?;
    let bound = params.constant / (1.0 / rho).ln().sqrt();

    let lifted: Vec<f64> = AffineFunction::from_spectrum(&s).coefficient_vector();
    let m = lifted.len();
    let l1: f64 = lifted.iter().map(|a| a.abs()).sum();

    let (branch, constructed): (WitnessBranch, Vec<f64>) = if rho >= 1.0 / 3.0 {
        (WitnessBranch::ZeroFunction, vec![0.0; m])
    } else if l1 <= 1.0 {
        // Covers rho = 0 as well: a bounded function with rho = 0 is affine
        // with l1 norm at most 1, so the projection is the function itself.
        (WitnessBranch::InBall, lifted.clone())
    } else {
        // Homogeneous case via the constant-as-extra-coordinate lift; sort
        // by magnitude, ties broken by original index.
        let mut order: Vec<usize> = (0..m).collect();
        order.sort_by(|&i, &j| {
            lifted[j]
                .abs()
                .partial_cmp(&lifted[i].abs())
                .expect("finite")
                .then(i.cmp(&j))
        });
        if lifted[order[0]].abs() > 1.0 + 1e-9 {
            return Err(Error::CoefficientTooLarge(lifted[order[0]].abs()));
        }
        // tau >= 1 always: single coefficients of a bounded function cannot
        // exceed 1 (up to rounding, which the max(1,..) prefix absorbs).
        let mut prefix = lifted[order[0]].abs();
        let mut tau = 1usize;
        while tau < m && prefix + lifted[order[tau]].abs() <= 1.0 {
            prefix += lifted[order[tau]].abs();
            tau += 1;
        }
        let threshold = (2.0 / params.base.ln()) * (1.0 / rho).ln();
        let mut c = vec![0.0; m];
        if tau as f64 >= threshold {
            let keep = (threshold.floor() as usize).min(tau);
            for &idx in order.iter().take(keep) {
                c[idx] = lifted[idx];
            }
            (WitnessBranch::Head, c)
        } else {
            for &idx in order.iter().take(tau) {
                c[idx] = lifted[idx];
            }
            // tau < m because the full l1 norm exceeds 1.
            let next = order[tau];
            c[next] = (1.0 - prefix) * lifted[next].signum();
            (WitnessBranch::Split, c)
        }
    };

    // Distances are spectral: || f - g ||^2 = rho^2 + || c_f - c_g ||^2 for
    // any affine g.
    let coeff_dev_sq: f64 = lifted
        .iter()
        .zip(&constructed)
        .map(|(a, b)| (a - b) * (a - b))
        .sum();
    let construction_dist = (rho * rho + coeff_dev_sq).sqrt();
    let split = if branch == WitnessBranch::Split {
        let deviation = coeff_dev_sq.sqrt();
        let exponent = 1.0 - std::f64::consts::LN_2 / params.base.ln();
        let split_bound = 20f64.sqrt() * rho.powf(exponent);
        Some(SplitCheck {
            deviation,
            bound: split_bound,
            holds: deviation <= split_bound + 1e-8,
        })
    } else {
        None
    };

    let holds = exact.dist <= bound + SLACK && construction_dist >= exact.dist - SLACK;
    Ok(WitnessReport {
        rho,
        dist: exact.dist,
        bound,
        branch,
        construction: AffineFunction::from_coefficient_vector(&constructed),
        construction_dist,
        split,
        holds,
    })
}

/// The truncated normalized sum `phi(s^-1 n^-1/2 sum x_i)` on the symmetric
/// cube. For `sqrt(n)/s < 1` the clamp never engages and the function is
/// exactly affine.
pub fn jow_example(n: usize, s: f64) -> Result<TableFunction> {
    if !s.is_finite() || s <= 0.0 {
        return Err(Error::InvalidScale(s));
    }
    let scale = 1.0 / (s * (n as f64).sqrt());
    TableFunction::from_fn(Bias::symmetric(), n, |m| {
        let sum = (2 * m.count_ones() as i64 - n as i64) as f64;
        phi(sum * scale)
    })
}
