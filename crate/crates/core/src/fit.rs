//! Estimating the scaling parameter from data.
//!
//! [`fit_alpha`] is the continuous maximum-likelihood estimate for a power
//! law truncated to `[k_min, k_max]`. With `x = ln(k / k_min)` the density is
//! a truncated exponential in `x` with rate `alpha - 1`, so the score is
//! `E_alpha[x] - mean(x)`, strictly decreasing in `alpha`. The root is found
//! by bisection; if the score keeps one sign over the whole search bracket
//! the likelihood is monotone there and no estimate is returned.
//!
//! [`alpha_from_moment`] inverts one of the closed-form moments instead.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::powerlaw::{serialize_k_max, Branch, PowerLawSpec};

/// Search bracket for alpha, `(ALPHA_LO, ALPHA_HI]`.
pub const ALPHA_LO: f64 = 1.001;
pub const ALPHA_HI: f64 = 6.0;

const BISECTION_TOL: f64 = 1e-12;
/// Points sampled across the bracket when checking moment monotonicity.
const MONOTONE_GRID: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FitResult {
    pub alpha_hat: f64,
    /// Asymptotic standard error from the Fisher information; equals
    /// `(alpha_hat - 1) / sqrt(n_tail)` when `k_max` is infinite.
    pub stderr: f64,
    pub k_min_used: f64,
    #[serde(serialize_with = "serialize_k_max")]
    pub k_max_used: f64,
    /// Observations inside `[k_min_used, k_max_used]`.
    pub n_tail: usize,
    /// Kolmogorov-Smirnov distance between the in-range data and the fit.
    pub ks_distance: f64,
}

/// `E[x]` for density proportional to `exp(-beta x)` on `[0, span]`.
fn expected_log(beta: f64, span: f64) -> f64 {
    if span.is_infinite() {
        1.0 / beta
    } else {
        1.0 / beta - span / (beta * span).exp_m1()
    }
}

/// `Var[x]` for the same density: the per-observation Fisher information.
fn log_variance(beta: f64, span: f64) -> f64 {
    if span.is_infinite() {
        1.0 / (beta * beta)
    } else {
        let m = (beta * span).exp_m1();
        let z = span / m;
        1.0 / (beta * beta) - z * z * (m + 1.0)
    }
}

/// Maximum-likelihood alpha for the observations in `[k_min, k_max]`.
/// `k_max` may be infinite.
pub fn fit_alpha(data: &[f64], k_min: f64, k_max: f64) -> Result<FitResult> {
    // Validates the support; the exponent here is a placeholder.
    PowerLawSpec::new(2.0, k_min, k_max)?;
    let mut tail: Vec<f64> = data
        .iter()
        .copied()
        .filter(|&x| x >= k_min && x <= k_max)
        .collect();
    let n = tail.len();
    if n < 2 {
        return Err(Error::TooFewPoints {
            found: n,
            needed: 2,
        });
    }
    let no_max = Error::NoMaximum {
        lo: ALPHA_LO,
        hi: ALPHA_HI,
    };
    let mean_log = tail.iter().map(|&x| (x / k_min).ln()).sum::<f64>() / n as f64;
    let span = (k_max / k_min).ln();
    if span == 0.0 {
        // Point support: the likelihood does not depend on alpha.
        return Err(no_max);
    }

    let alpha_hat = if span.is_infinite() {
        if mean_log <= 0.0 {
            return Err(no_max);
        }
        let alpha = 1.0 + 1.0 / mean_log;
        if !(alpha > ALPHA_LO && alpha <= ALPHA_HI) {
            return Err(no_max);
        }
        alpha
    } else {
        let score = |alpha: f64| expected_log(alpha - 1.0, span) - mean_log;
        if score(ALPHA_LO) <= 0.0 || score(ALPHA_HI) >= 0.0 {
            return Err(no_max);
        }
        let (mut lo, mut hi) = (ALPHA_LO, ALPHA_HI);
        while hi - lo > BISECTION_TOL {
            let mid = 0.5 * (lo + hi);
            if score(mid) > 0.0 {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        0.5 * (lo + hi)
    };

    let model = PowerLawSpec::new(alpha_hat, k_min, k_max)?;
    tail.sort_by(f64::total_cmp);
    let nf = n as f64;
    let ks_distance = tail
        .iter()
        .enumerate()
        .map(|(i, &x)| {
            let f = model.cdf(x);
            (f - i as f64 / nf).max((i + 1) as f64 / nf - f)
        })
        .fold(0.0, f64::max);

    Ok(FitResult {
        alpha_hat,
        stderr: 1.0 / (nf * log_variance(alpha_hat - 1.0, span)).sqrt(),
        k_min_used: k_min,
        k_max_used: k_max,
        n_tail: n,
        ks_distance,
    })
}

/// Fits integer degrees. `k_min` defaults to the smallest positive degree and
/// `k_max` to the largest degree.
pub fn fit_alpha_degrees(
    degrees: &[usize],
    k_min: Option<f64>,
    k_max: Option<f64>,
) -> Result<FitResult> {
    let observed_min = degrees.iter().copied().filter(|&k| k > 0).min();
    let k_min = match (k_min, observed_min) {
        (Some(k), _) => k,
        (None, Some(k)) => k as f64,
        (None, None) => return Err(Error::AllIsolated),
    };
    let k_max = k_max.unwrap_or_else(|| degrees.iter().copied().max().unwrap_or(0) as f64);
    let data: Vec<f64> = degrees.iter().map(|&k| k as f64).collect();
    fit_alpha(&data, k_min, k_max)
}

/// Which closed-form moment [`alpha_from_moment`] inverts.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Moment {
    Mean,
    Variance,
    VarToMean,
}

impl Moment {
    pub const ALL: [Moment; 3] = [Moment::Mean, Moment::Variance, Moment::VarToMean];

    /// The general closed form is continuous through alpha = 2 and 3, where
    /// the limit branches are constant in alpha and would leave bisection a
    /// flat window to wander in.
    fn eval(self, alpha: f64, k_min: f64, k_max: f64) -> Result<f64> {
        let p = PowerLawSpec::new(alpha, k_min, k_max)?.predict_branch(Branch::General)?;
        Ok(match self {
            Moment::Mean => p.mean_k,
            Moment::Variance => p.variance,
            Moment::VarToMean => p.var_to_mean,
        })
    }
}

/// Solves `moment(alpha; k_min, k_max) = observed` by bisection on
/// `(ALPHA_LO, ALPHA_HI]`, or on `(3, ALPHA_HI]` without an upper cutoff.
///
/// The variance-to-mean ratio rises before it falls when alpha is close to
/// one, so the search runs on the monotone branch that ends at `ALPHA_HI`.
/// A moment with more than one turning point is rejected.
pub fn alpha_from_moment(observed: f64, which: Moment, k_min: f64, k_max: f64) -> Result<f64> {
    let lo_bound = if k_max.is_infinite() {
        3.0 + 1e-3
    } else {
        ALPHA_LO
    };
    let f = |alpha: f64| which.eval(alpha, k_min, k_max);

    let alphas: Vec<f64> = (0..=MONOTONE_GRID)
        .map(|i| lo_bound + (ALPHA_HI - lo_bound) * i as f64 / MONOTONE_GRID as f64)
        .collect();
    let values: Vec<f64> = alphas.iter().map(|&a| f(a)).collect::<Result<_>>()?;
    let steps: Vec<bool> = values.windows(2).map(|w| w[1] < w[0]).collect();
    if values.windows(2).any(|w| w[1] == w[0]) {
        return Err(Error::NonMonotone);
    }
    let decreasing = *steps.last().expect("grid has several points");
    let turns = steps.windows(2).filter(|w| w[0] != w[1]).count();
    if turns > 1 {
        return Err(Error::NonMonotone);
    }
    let mut lo = lo_bound;
    let mut f_lo = values[0];
    if turns == 1 {
        // First grid step that already follows the final direction.
        let i = steps
            .iter()
            .rposition(|&d| d != decreasing)
            .expect("one turn")
            + 1;
        lo = refine_turning_point(&f, alphas[i - 1], alphas[i + 1], decreasing)?;
        f_lo = f(lo)?;
    }
    let mut hi = ALPHA_HI;
    let mut f_hi = values[MONOTONE_GRID];
    let (min, max) = (f_lo.min(f_hi), f_lo.max(f_hi));
    if !(observed >= min && observed <= max) {
        return Err(Error::OutOfRange {
            observed,
            lo: min,
            hi: max,
        });
    }

    // Invariant: the target lies between f(lo) and f(hi).
    let above = |value: f64| {
        if decreasing {
            value > observed
        } else {
            value < observed
        }
    };
    while hi - lo > BISECTION_TOL {
        let mid = 0.5 * (lo + hi);
        let value = f(mid)?;
        if value == observed {
            return Ok(mid);
        }
        if above(value) {
            lo = mid;
            f_lo = value;
        } else {
            hi = mid;
            f_hi = value;
        }
    }
    Ok(if (f_lo - observed).abs() <= (f_hi - observed).abs() {
        lo
    } else {
        hi
    })
}

/// Golden-section search for the extremum of a unimodal moment on `[a, b]`:
/// a maximum when the moment decreases afterwards, a minimum otherwise.
fn refine_turning_point<F>(f: &F, mut a: f64, mut b: f64, peak: bool) -> Result<f64>
where
    F: Fn(f64) -> Result<f64>,
{
    let ratio = (5f64.sqrt() - 1.0) / 2.0;
    let better = |x: f64, y: f64| if peak { x > y } else { x < y };
    while b - a > BISECTION_TOL {
        let c = b - ratio * (b - a);
        let d = a + ratio * (b - a);
        if better(f(c)?, f(d)?) {
            b = d;
        } else {
            a = c;
        }
    }
    Ok(0.5 * (a + b))
}
