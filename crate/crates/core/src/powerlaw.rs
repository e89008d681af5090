//! Continuous truncated power law `P(k) = C k^-alpha` on `[k_min, k_max]`.
//!
//! All moments are written in terms of the quotient
//! `q(s) = (k_max^s - k_min^s) / s`, evaluated through `expm1` so that it
//! stays accurate as `s -> 0`. The mean is `q(2 - alpha) / q(1 - alpha)` and
//! the mean degree of friends is `q(3 - alpha) / q(2 - alpha)`. Within
//! [`SWITCH_EPS`] of `alpha = 2` or `alpha = 3` the closed-form limits are
//! used instead and the result is tagged with the branch that produced it.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::netgen::DegreeSequence;

/// Distance from `alpha = 2` or `alpha = 3` inside which the limit formulas
/// replace the general expressions.
pub const SWITCH_EPS: f64 = 1e-6;

/// Which closed form produced a [`PredictionResult`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Branch {
    #[serde(rename = "GENERAL")]
    General,
    #[serde(rename = "LIMIT_ALPHA_2")]
    LimitAlpha2,
    #[serde(rename = "LIMIT_ALPHA_3")]
    LimitAlpha3,
    #[serde(rename = "DEGENERATE")]
    Degenerate,
}

impl fmt::Display for Branch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Branch::General => "GENERAL",
            Branch::LimitAlpha2 => "LIMIT_ALPHA_2",
            Branch::LimitAlpha3 => "LIMIT_ALPHA_3",
            Branch::Degenerate => "DEGENERATE",
        })
    }
}

/// Parameters of a truncated power law. `k_max` may be `f64::INFINITY`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PowerLawSpec {
    alpha: f64,
    k_min: f64,
    #[serde(serialize_with = "serialize_k_max")]
    k_max: f64,
}

/// Serializes an infinite upper cutoff as the string `"inf"`.
pub fn serialize_k_max<S: Serializer>(k_max: &f64, s: S) -> std::result::Result<S::Ok, S::Error> {
    if k_max.is_infinite() {
        s.serialize_str("inf")
    } else {
        s.serialize_f64(*k_max)
    }
}

/// Analytical friendship-paradox quantities for a [`PowerLawSpec`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PredictionResult {
    /// Normalization constant; `None` for a point mass.
    pub c: Option<f64>,
    pub mean_k: f64,
    pub second_moment: f64,
    pub variance: f64,
    pub var_to_mean: f64,
    pub k_ff: f64,
    pub branch: Branch,
}

impl PowerLawSpec {
    pub fn new(alpha: f64, k_min: f64, k_max: f64) -> Result<Self> {
        if !alpha.is_finite() || alpha <= 1.0 {
            return Err(Error::InvalidSpec(format!(
                "alpha must be > 1, got {alpha}"
            )));
        }
        if !k_min.is_finite() || k_min < 1.0 {
            return Err(Error::InvalidSpec(format!(
                "k_min must be >= 1, got {k_min}"
            )));
        }
        if k_max.is_nan() || k_max < k_min || k_max == f64::NEG_INFINITY {
            return Err(Error::InvalidSpec(format!(
                "k_max must be >= k_min ({k_min}), got {k_max}"
            )));
        }
        Ok(Self {
            alpha,
            k_min,
            k_max,
        })
    }

    /// A power law with no upper cutoff.
    pub fn unbounded(alpha: f64, k_min: f64) -> Result<Self> {
        Self::new(alpha, k_min, f64::INFINITY)
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn k_min(&self) -> f64 {
        self.k_min
    }

    pub fn k_max(&self) -> f64 {
        self.k_max
    }

    pub fn is_unbounded(&self) -> bool {
        self.k_max.is_infinite()
    }

    pub fn is_degenerate(&self) -> bool {
        self.k_min == self.k_max
    }

    /// Same support, different exponent.
    pub fn with_alpha(&self, alpha: f64) -> Result<Self> {
        Self::new(alpha, self.k_min, self.k_max)
    }

    fn log_span(&self) -> f64 {
        (self.k_max / self.k_min).ln()
    }

    /// `C` such that `C k^-alpha` integrates to one over the support.
    pub fn normalization_constant(&self) -> Result<f64> {
        if self.is_degenerate() {
            return Err(Error::DegenerateSupport(self.k_min));
        }
        let q = power_quotient(1.0 - self.alpha, self.k_min, self.k_max);
        if !q.is_finite() {
            return Err(Error::Divergent(format!(
                "normalization integral diverges for alpha = {}",
                self.alpha
            )));
        }
        Ok(1.0 / q)
    }

    /// Density at `k`; zero outside the support. A point mass has infinite
    /// density at its single support point.
    pub fn pdf(&self, k: f64) -> f64 {
        if k < self.k_min || k > self.k_max {
            return 0.0;
        }
        match self.normalization_constant() {
            Ok(c) => c * k.powf(-self.alpha),
            Err(_) => f64::INFINITY,
        }
    }

    /// Probability mass on `[k_min, k]`, clamped to `[0, 1]`.
    pub fn cdf(&self, k: f64) -> f64 {
        if k < self.k_min {
            return 0.0;
        }
        if k >= self.k_max {
            return 1.0;
        }
        let s = 1.0 - self.alpha;
        let value = power_quotient(s, self.k_min, k) / power_quotient(s, self.k_min, self.k_max);
        value.clamp(0.0, 1.0)
    }

    /// Inverse of [`cdf`](Self::cdf) for `u` in `[0, 1)`.
    pub fn quantile(&self, u: f64) -> f64 {
        if self.is_degenerate() {
            return self.k_min;
        }
        let s = 1.0 - self.alpha;
        // k_min^(1-a) - u (k_min^(1-a) - k_max^(1-a)), factored through k_min.
        let tail = if self.is_unbounded() {
            0.0
        } else {
            (self.k_max / self.k_min).powf(s)
        };
        let base = 1.0 - u * (1.0 - tail);
        (self.k_min * base.powf(1.0 / s)).clamp(self.k_min, self.k_max)
    }

    /// Mean degree, variance and mean degree of friends.
    pub fn predict(&self) -> Result<PredictionResult> {
        if self.is_degenerate() {
            return self.predict_branch(Branch::Degenerate);
        }
        if self.is_unbounded() && self.alpha <= 3.0 + SWITCH_EPS {
            return Err(Error::Divergent(format!(
                "variance is infinite for alpha = {} <= 3 without an upper cutoff",
                self.alpha
            )));
        }
        let branch = if (self.alpha - 2.0).abs() <= SWITCH_EPS {
            Branch::LimitAlpha2
        } else if (self.alpha - 3.0).abs() <= SWITCH_EPS {
            Branch::LimitAlpha3
        } else {
            Branch::General
        };
        self.predict_branch(branch)
    }

    /// Evaluates one specific closed form regardless of how close `alpha` is
    /// to a singular point. The limit branches ignore `alpha` except through
    /// the normalization constant and, for `LimitAlpha3`, the mean.
    pub fn predict_branch(&self, branch: Branch) -> Result<PredictionResult> {
        if branch == Branch::Degenerate {
            if !self.is_degenerate() {
                return Err(Error::InvalidSpec(
                    "point-mass branch needs k_min = k_max".into(),
                ));
            }
            let k = self.k_min;
            return Ok(PredictionResult {
                c: None,
                mean_k: k,
                second_moment: k * k,
                variance: 0.0,
                var_to_mean: 0.0,
                k_ff: k,
                branch,
            });
        }
        if self.is_degenerate() {
            return Err(Error::DegenerateSupport(self.k_min));
        }
        if self.is_unbounded() && branch != Branch::General {
            return Err(Error::Divergent(
                "limit formulas need a finite upper cutoff".into(),
            ));
        }

        let (lo, hi, a) = (self.k_min, self.k_max, self.alpha);
        let q0 = power_quotient(1.0 - a, lo, hi);
        let q1 = power_quotient(2.0 - a, lo, hi);
        let q2 = power_quotient(3.0 - a, lo, hi);

        let (mean_k, k_ff) = match branch {
            Branch::LimitAlpha2 => (
                log_mean(lo, hi, self.log_span()),
                (hi - lo) / self.log_span(),
            ),
            Branch::LimitAlpha3 => (q1 / q0, log_mean(lo, hi, self.log_span())),
            _ => (q1 / q0, q2 / q1),
        };
        if !(mean_k.is_finite() && k_ff.is_finite()) {
            return Err(Error::Divergent(format!("moments diverge for alpha = {a}")));
        }
        let var_to_mean = k_ff - mean_k;
        Ok(PredictionResult {
            c: Some(1.0 / q0),
            mean_k,
            second_moment: k_ff * mean_k,
            variance: var_to_mean * mean_k,
            var_to_mean,
            k_ff,
            branch,
        })
    }

    /// `n` continuous draws by the transformation method, before rounding.
    pub fn sample_continuous(&self, n: usize, seed: u64) -> Vec<f64> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        self.sample_continuous_with(n, &mut rng)
    }

    pub fn sample_continuous_with<R: Rng + ?Sized>(&self, n: usize, rng: &mut R) -> Vec<f64> {
        (0..n).map(|_| self.quantile(rng.gen::<f64>())).collect()
    }

    /// Integer degrees: the draws of [`sample_continuous`](Self::sample_continuous)
    /// with the same seed, rounded half-up.
    pub fn sample_degrees(&self, n: usize, seed: u64) -> Result<DegreeSequence> {
        if self.is_unbounded() {
            return Err(Error::Divergent(
                "integer degrees need a finite upper cutoff".into(),
            ));
        }
        Ok(round_degrees(&self.sample_continuous(n, seed)))
    }
}

/// Rounds continuous draws half-up to integer degrees.
pub fn round_degrees(values: &[f64]) -> DegreeSequence {
    DegreeSequence::new(values.iter().map(|&x| (x + 0.5).floor() as usize).collect())
}

/// `(hi^s - lo^s) / s`, continuous through `s = 0` where it equals `ln(hi/lo)`.
/// With `hi = inf` it is finite only for `s < 0`.
fn power_quotient(s: f64, lo: f64, hi: f64) -> f64 {
    if hi.is_infinite() {
        return if s < 0.0 {
            -lo.powf(s) / s
        } else {
            f64::INFINITY
        };
    }
    let span = (hi / lo).ln();
    if s == 0.0 {
        return span;
    }
    lo.powf(s) * (s * span).exp_m1() / s
}

/// `k_min k_max ln(k_max/k_min) / (k_max - k_min)`: the mean at `alpha = 2`
/// and the mean degree of friends at `alpha = 3`.
fn log_mean(lo: f64, hi: f64, span: f64) -> f64 {
    lo * hi * span / (hi - lo)
}
