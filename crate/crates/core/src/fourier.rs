//! Walsh-Fourier transform on the biased cube and spectral summaries.
//!
//! The forward butterfly applies, per coordinate, the rule
//! `(b0, b1) = (beta*f_lo + alpha*f_hi, sqrt(alpha*beta)*(f_hi - f_lo))`,
//! which is the inner product against `{1, x_i}` after the simplifications
//! `beta*gamma = alpha/gamma = sqrt(alpha*beta)`. Total cost `O(n 2^n)`.

use crate::cube::{Bias, TableFunction};
use crate::error::{Error, Result};

/// The `2^n` Walsh-Fourier coefficients of a table, indexed by subset
/// bitmask: entry `T` is `a_T = <f, w_T>`.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum {
    bias: Bias,
    n: usize,
    coeffs: Vec<f64>,
}

impl Spectrum {
    pub fn from_coeffs(bias: Bias, n: usize, coeffs: Vec<f64>) -> Result<Self> {
        // Reuse the table shape checks; a spectrum has the same layout.
        let t = TableFunction::new(bias, n, coeffs)?;
        Ok(Spectrum {
            bias,
            n,
            coeffs: t.values().to_vec(),
        })
    }

    pub fn bias(&self) -> Bias {
        self.bias
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    /// `a_T` for the subset encoded by `mask`.
    pub fn coeff(&self, mask: u32) -> f64 {
        self.coeffs[mask as usize]
    }

    /// `a_∅`.
    pub fn constant_coeff(&self) -> f64 {
        self.coeffs[0]
    }

    /// `a_{i}` for the singleton `{i}` (0-based coordinate).
    pub fn singleton_coeff(&self, i: usize) -> f64 {
        self.coeffs[1 << i]
    }

    /// `(a_∅, [a_{0}, ..., a_{n-1}])` — the degree-at-most-one part.
    pub fn affine_part(&self) -> (f64, Vec<f64>) {
        let singles = (0..self.n).map(|i| self.coeffs[1 << i]).collect();
        (self.coeffs[0], singles)
    }

    /// `sum over |T| = k of a_T^2`.
    pub fn level_weight(&self, k: usize) -> Result<f64> {
        if k > self.n {
            return Err(Error::LevelOutOfRange {
                level: k,
                n: self.n,
            });
        }
        Ok(self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(t, _)| (*t as u32).count_ones() as usize == k)
            .map(|(_, a)| a * a)
            .sum())
    }

    /// All level weights, index `k` in `0..=n`.
    pub fn level_weights(&self) -> Vec<f64> {
        let mut out = vec![0.0; self.n + 1];
        for (t, a) in self.coeffs.iter().enumerate() {
            out[(t as u32).count_ones() as usize] += a * a;
        }
        out
    }

    /// Spectral tail above the affine levels:
    /// `rho = sqrt(sum over |T| > 1 of a_T^2)`.
    pub fn rho(&self) -> f64 {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(t, _)| (*t as u32).count_ones() >= 2)
            .map(|(_, a)| a * a)
            .sum::<f64>()
            .sqrt()
    }

    /// `sum a_T^2`; equals `||f||_2^2` by Parseval.
    pub fn total_weight(&self) -> f64 {
        self.coeffs.iter().map(|a| a * a).sum()
    }

    /// Reconstructs the value table by the inverse butterfly:
    /// per coordinate, `(f_lo, f_hi) = (b0 + low*b1, b0 + high*b1)`.
    pub fn inverse(&self) -> TableFunction {
        let low = self.bias.low_value();
        let high = self.bias.high_value();
        let mut v = self.coeffs.clone();
        let size = v.len();
        let mut stride = 1;
        while stride < size {
            let block = stride * 2;
            for base in (0..size).step_by(block) {
                for idx in base..base + stride {
                    let b0 = v[idx];
                    let b1 = v[idx + stride];
                    v[idx] = b0 + low * b1;
                    v[idx + stride] = b0 + high * b1;
                }
            }
            stride = block;
        }
        TableFunction::new(self.bias, self.n, v).expect("shape preserved")
    }
}

/// Forward Walsh-Fourier transform; the input table is not mutated.
pub fn transform(f: &TableFunction) -> Spectrum {
    let bias = f.bias();
    let alpha = bias.alpha();
    let beta = bias.beta();
    let sab = bias.sqrt_ab();
    let mut c = f.values().to_vec();
    let size = c.len();
    let mut stride = 1;
    while stride < size {
        let block = stride * 2;
        for base in (0..size).step_by(block) {
            for idx in base..base + stride {
                let lo = c[idx];
                let hi = c[idx + stride];
                c[idx] = beta * lo + alpha * hi;
                c[idx + stride] = sab * (hi - lo);
            }
        }
        stride = block;
    }
    Spectrum {
        bias,
        n: f.n(),
        coeffs: c,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn one_coordinate_boolean_dictator() {
        // f(-gamma) = -1, f(1/gamma) = +1 at alpha = 1/4:
        // a_empty = alpha - beta = -1/2, a_{0} = 2 sqrt(alpha beta) = sqrt(3)/2.
        let b = Bias::new(0.25).unwrap();
        let f = TableFunction::new(b, 1, vec![-1.0, 1.0]).unwrap();
        let s = transform(&f);
        assert_abs_diff_eq!(s.coeff(0), -0.5, epsilon = 1e-15);
        assert_abs_diff_eq!(s.coeff(1), 0.8660254037844386, epsilon = 1e-15);
        assert_abs_diff_eq!(s.total_weight(), 1.0, epsilon = 1e-15);
    }

    #[test]
    fn constant_concentrates_on_empty_set() {
        let b = Bias::new(0.3).unwrap();
        let f = TableFunction::constant(b, 4, 2.5).unwrap();
        let s = transform(&f);
        assert_abs_diff_eq!(s.constant_coeff(), 2.5, epsilon = 1e-12);
        for t in 1..16u32 {
            assert_abs_diff_eq!(s.coeff(t), 0.0, epsilon = 1e-12);
        }
    }

    #[test]
    fn basis_function_transforms_to_indicator() {
        let b = Bias::symmetric();
        let f = TableFunction::basis(b, 2, 0b11).unwrap();
        let s = transform(&f);
        for t in 0..4u32 {
            let expect = if t == 0b11 { 1.0 } else { 0.0 };
            assert_abs_diff_eq!(s.coeff(t), expect, epsilon = 1e-12);
        }
        assert_abs_diff_eq!(s.level_weight(2).unwrap(), 1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(s.level_weight(0).unwrap(), 0.0, epsilon = 1e-12);
        assert_abs_diff_eq!(s.level_weight(1).unwrap(), 0.0, epsilon = 1e-12);
        assert_abs_diff_eq!(s.rho(), 1.0, epsilon = 1e-12);
    }

    #[test]
    fn spectrum_only_constant_inverts_to_constant() {
        let b = Bias::new(0.25).unwrap();
        let mut coeffs = vec![0.0; 8];
        coeffs[0] = 3.0;
        let s = Spectrum::from_coeffs(b, 3, coeffs).unwrap();
        let f = s.inverse();
        for &v in f.values() {
            assert_abs_diff_eq!(v, 3.0, epsilon = 1e-12);
        }
    }

    #[test]
    fn level_weight_out_of_range() {
        let b = Bias::symmetric();
        let s = transform(&TableFunction::constant(b, 2, 1.0).unwrap());
        assert_eq!(
            s.level_weight(3),
            Err(Error::LevelOutOfRange { level: 3, n: 2 })
        );
    }

    #[test]
    fn affine_functions_have_zero_rho() {
        let b = Bias::new(0.4).unwrap();
        let f = TableFunction::from_fn(b, 3, |m| {
            let x0 = if m & 1 == 1 {
                b.high_value()
            } else {
                b.low_value()
            };
            let x2 = if m >> 2 & 1 == 1 {
                b.high_value()
            } else {
                b.low_value()
            };
            0.3 + 0.5 * x0 - 0.2 * x2
        })
        .unwrap();
        let s = transform(&f);
        assert_abs_diff_eq!(s.rho(), 0.0, epsilon = 1e-12);
    }

    #[test]
    fn round_trip_identity() {
        let b = Bias::new(0.3).unwrap();
        let f = TableFunction::from_fn(b, 6, |m| ((m * 37 + 11) % 17) as f64 / 7.0 - 1.0).unwrap();
        let g = transform(&f).inverse();
        for (a, b) in f.values().iter().zip(g.values()) {
            assert_abs_diff_eq!(a, b, epsilon = 1e-12);
        }
    }
}
