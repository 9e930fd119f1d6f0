//! The biased discrete cube: its two-point measure, point encoding, and the
//! exact expectation / L_p machinery everything else consumes.
//!
//! A coordinate takes the value `1/gamma` with probability `alpha` and
//! `-gamma` with probability `beta = 1 - alpha`, where `gamma = sqrt(alpha/beta)`.
//! This normalization makes every coordinate mean-zero and variance-one.

use crate::error::{Error, Result};

/// Largest supported coordinate count; tables hold `2^n` values.
pub const MAX_N: usize = 26;

/// Measure parameters of one coordinate of the biased cube.
///
/// Everything is derived from `alpha` at construction; instances are
/// immutable and cheap to copy.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Bias {
    alpha: f64,
    beta: f64,
    gamma: f64,
    low: f64,
    high: f64,
}

impl Bias {
    /// Builds the measure for a given `alpha ∈ (0, 1/2]`.
    ///
    /// `alpha = 1/2` is the symmetric cube (`gamma = 1`); larger values are
    /// rejected rather than silently swapped with `beta`.
    pub fn new(alpha: f64) -> Result<Self> {
        if !alpha.is_finite() || alpha <= 0.0 || alpha > 0.5 {
            return Err(Error::InvalidAlpha(alpha));
        }
        let beta = 1.0 - alpha;
        let gamma = (alpha / beta).sqrt();
        Ok(Bias {
            alpha,
            beta,
            gamma,
            low: -gamma,
            high: 1.0 / gamma,
        })
    }

    /// The uniform-measure cube (`alpha = 1/2`, points `±1`).
    pub fn symmetric() -> Self {
        Bias {
            alpha: 0.5,
            beta: 0.5,
            gamma: 1.0,
            low: -1.0,
            high: 1.0,
        }
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    /// The point carrying probability `beta`, i.e. `-gamma`.
    pub fn low_value(&self) -> f64 {
        self.low
    }

    /// The point carrying probability `alpha`, i.e. `1/gamma`.
    pub fn high_value(&self) -> f64 {
        self.high
    }

    /// `sqrt(alpha * beta)`; equals both `beta * gamma` and `alpha / gamma`,
    /// which is what makes the transform butterfly cheap.
    pub fn sqrt_ab(&self) -> f64 {
        (self.alpha * self.beta).sqrt()
    }

    pub fn is_symmetric(&self) -> bool {
        self.alpha == 0.5
    }
}

/// One atom of the product measure: the probability of a single point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PointWeight {
    /// Bitmask of the point: bit `i` set means coordinate `i` sits at the
    /// high value `1/gamma`.
    pub index: u32,
    /// `alpha^popcount * beta^(n - popcount)`.
    pub weight: f64,
}

/// A real-valued function on the cube stored as `2^n` values.
///
/// Entry `m` is the value at the point whose coordinate `i` is high exactly
/// when bit `i` of `m` is set. Immutable after construction.
#[derive(Debug, Clone, PartialEq)]
pub struct TableFunction {
    bias: Bias,
    n: usize,
    values: Vec<f64>,
}

fn check_n(n: usize) -> Result<()> {
    if n == 0 || n > MAX_N {
        return Err(Error::InvalidDimension { n, max: MAX_N });
    }
    Ok(())
}

impl TableFunction {
    pub fn new(bias: Bias, n: usize, values: Vec<f64>) -> Result<Self> {
        check_n(n)?;
        let expected = 1usize << n;
        if values.len() != expected {
            return Err(Error::TableLength {
                expected,
                got: values.len(),
            });
        }
        if values.iter().any(|v| !v.is_finite()) {
            return Err(Error::NonFiniteValue);
        }
        Ok(TableFunction { bias, n, values })
    }

    /// Tabulates `f` by evaluating a closure at every point index.
    pub fn from_fn(bias: Bias, n: usize, f: impl FnMut(u32) -> f64) -> Result<Self> {
        check_n(n)?;
        let values = (0..1u32 << n).map(f).collect();
        Self::new(bias, n, values)
    }

    /// The constant function `c`.
    pub fn constant(bias: Bias, n: usize, c: f64) -> Result<Self> {
        Self::new(bias, n, vec![c; 1 << n])
    }

    /// The Walsh basis function `w_T` for the subset encoded by `mask`.
    pub fn basis(bias: Bias, n: usize, mask: u32) -> Result<Self> {
        check_n(n)?;
        if mask >= (1u32 << n) {
            return Err(Error::LevelOutOfRange {
                level: mask as usize,
                n,
            });
        }
        Self::from_fn(bias, n, |m| {
            let mut w = 1.0;
            for i in 0..n {
                if mask >> i & 1 == 1 {
                    w *= if m >> i & 1 == 1 {
                        bias.high_value()
                    } else {
                        bias.low_value()
                    };
                }
            }
            w
        })
    }

    /// A `{-1,+1}`-valued table from a truth-table id: bit `m` of `id` set
    /// means `f(m) = +1`. Only for `n <= 6` (the id must fit in 64 bits).
    pub fn from_truth_table(bias: Bias, n: usize, id: u64) -> Result<Self> {
        check_n(n)?;
        if n > 6 {
            return Err(Error::InvalidDimension { n, max: 6 });
        }
        Self::from_fn(bias, n, |m| if id >> m & 1 == 1 { 1.0 } else { -1.0 })
    }

    pub fn bias(&self) -> Bias {
        self.bias
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn value(&self, m: u32) -> f64 {
        self.values[m as usize]
    }

    /// The value coordinate `i` takes at point `m`.
    pub fn coordinate_value(&self, m: u32, i: usize) -> f64 {
        if m >> i & 1 == 1 {
            self.bias.high
        } else {
            self.bias.low
        }
    }

    /// True when every entry is exactly `-1.0` or `+1.0`.
    pub fn is_boolean(&self) -> bool {
        self.values.iter().all(|&v| v == 1.0 || v == -1.0)
    }

    /// True when every entry lies in `[-1, 1]`.
    pub fn is_bounded(&self) -> bool {
        self.values.iter().all(|&v| (-1.0..=1.0).contains(&v))
    }

    /// Probability of point `m` under the product measure.
    pub fn point_weight(&self, m: u32) -> f64 {
        let k = m.count_ones() as i32;
        self.bias.alpha.powi(k) * self.bias.beta.powi(self.n as i32 - k)
    }

    /// Weight of a point as a function of its popcount; index by
    /// `m.count_ones()`. Precomputed once per sweep over the table.
    pub fn weights_by_popcount(&self) -> Vec<f64> {
        (0..=self.n)
            .map(|k| self.bias.alpha.powi(k as i32) * self.bias.beta.powi((self.n - k) as i32))
            .collect()
    }

    /// All `2^n` point weights in ascending index order.
    pub fn point_weights(&self) -> impl Iterator<Item = PointWeight> + '_ {
        let wp = self.weights_by_popcount();
        (0..1u32 << self.n).map(move |m| PointWeight {
            index: m,
            weight: wp[m.count_ones() as usize],
        })
    }

    /// `E f` under the product measure. Summation is in ascending index
    /// order so results are reproducible bit-for-bit.
    pub fn expectation(&self) -> f64 {
        let wp = self.weights_by_popcount();
        self.values
            .iter()
            .enumerate()
            .map(|(m, &v)| wp[(m as u32).count_ones() as usize] * v)
            .sum()
    }

    /// `E f` with Kahan-Babuska compensation; stress-test variant of
    /// [`expectation`](Self::expectation), not the default path.
    pub fn expectation_compensated(&self) -> f64 {
        let wp = self.weights_by_popcount();
        let mut sum = 0.0f64;
        let mut comp = 0.0f64;
        for (m, &v) in self.values.iter().enumerate() {
            let term = wp[(m as u32).count_ones() as usize] * v;
            let t = sum + term;
            if sum.abs() >= term.abs() {
                comp += (sum - t) + term;
            } else {
                comp += (term - t) + sum;
            }
            sum = t;
        }
        sum + comp
    }

    /// `(E |f|^p)^(1/p)` for `p >= 1`.
    pub fn lp_norm(&self, p: f64) -> Result<f64> {
        if !p.is_finite() || p < 1.0 {
            return Err(Error::InvalidExponent(p));
        }
        let wp = self.weights_by_popcount();
        let acc = |pow: &dyn Fn(f64) -> f64| -> f64 {
            self.values
                .iter()
                .enumerate()
                .map(|(m, &v)| wp[(m as u32).count_ones() as usize] * pow(v))
                .sum()
        };
        if p == 1.0 {
            Ok(acc(&|v: f64| v.abs()))
        } else if p == 2.0 {
            Ok(acc(&|v: f64| v * v).sqrt())
        } else {
            Ok(acc(&|v: f64| v.abs().powf(p)).powf(1.0 / p))
        }
    }

    /// The L2 norm `sqrt(E f^2)`.
    pub fn l2_norm(&self) -> f64 {
        self.lp_norm(2.0).expect("2 >= 1")
    }

    /// `<f, g> = E f g`; both operands must live on the same cube.
    pub fn scalar_product(&self, other: &TableFunction) -> Result<f64> {
        if self.n != other.n || self.bias != other.bias {
            return Err(Error::Mismatch);
        }
        let wp = self.weights_by_popcount();
        Ok(self
            .values
            .iter()
            .zip(&other.values)
            .enumerate()
            .map(|(m, (&a, &b))| wp[(m as u32).count_ones() as usize] * a * b)
            .sum())
    }

    /// `||f - g||_2`.
    pub fn l2_distance(&self, other: &TableFunction) -> Result<f64> {
        if self.n != other.n || self.bias != other.bias {
            return Err(Error::Mismatch);
        }
        let wp = self.weights_by_popcount();
        let sum: f64 = self
            .values
            .iter()
            .zip(&other.values)
            .enumerate()
            .map(|(m, (&a, &b))| {
                let d = a - b;
                wp[(m as u32).count_ones() as usize] * d * d
            })
            .sum();
        Ok(sum.sqrt())
    }
}
