//! Closed forms against quadrature and against each other.

mod common;

use common::quadrature::{integrate, moments};
use fparadox::powerlaw::{Branch, PowerLawSpec, SWITCH_EPS};

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs()
}

#[test]
fn moments_match_quadrature_on_grid() {
    for &alpha in &[1.1, 1.5, 1.8, 2.5, 2.7, 3.5, 4.2] {
        for &k_min in &[1.0, 2.0, 3.5] {
            for &k_max in &[10.0, 100.0, 1000.0, 12345.0] {
                let spec = PowerLawSpec::new(alpha, k_min, k_max).unwrap();
                let p = spec.predict().unwrap();
                let (c, mean, m2, var) = moments(alpha, k_min, k_max);
                let ctx = format!("alpha={alpha} k_min={k_min} k_max={k_max}");
                assert!(rel(p.c.unwrap(), c) <= 1e-8, "C {ctx}");
                assert!(rel(p.mean_k, mean) <= 1e-8, "mean {ctx}");
                assert!(rel(p.second_moment, m2) <= 1e-8, "<k^2> {ctx}");
                assert!(rel(p.variance, var) <= 1e-8, "variance {ctx}");
                assert!(rel(p.var_to_mean, var / mean) <= 1e-8, "ratio {ctx}");
            }
        }
    }
}

#[test]
fn unbounded_moments_match_quadrature() {
    for &alpha in &[3.5, 4.0, 5.5] {
        let p = PowerLawSpec::unbounded(alpha, 1.0)
            .unwrap()
            .predict()
            .unwrap();
        let (c, mean, _, var) = moments(alpha, 1.0, f64::INFINITY);
        assert!(rel(p.c.unwrap(), c) <= 1e-8);
        assert!(rel(p.mean_k, mean) <= 1e-8);
        assert!(rel(p.variance, var) <= 1e-8);
    }
}

#[test]
fn limits_match_quadrature_at_singular_points() {
    let e = std::f64::consts::E;
    // Quadrature just off the singular point, as in the worked example.
    for &alpha in &[2.0 - 1e-7, 2.0 + 1e-7] {
        let (_, mean, m2, _) = moments(alpha, 1.0, e);
        let p = PowerLawSpec::new(2.0, 1.0, e).unwrap().predict().unwrap();
        assert!(rel(p.mean_k, mean) < 1e-6);
        assert!(rel(p.k_ff, m2 / mean) < 1e-6);
    }
    for &k_max in &[10.0, 1000.0] {
        let (_, mean, m2, _) = moments(3.0, 1.0, k_max);
        let p = PowerLawSpec::new(3.0, 1.0, k_max)
            .unwrap()
            .predict()
            .unwrap();
        assert_eq!(p.branch, Branch::LimitAlpha3);
        assert!(rel(p.mean_k, mean) < 1e-10);
        assert!(rel(p.k_ff, m2 / mean) < 1e-10);
    }
}

#[test]
fn pdf_integrates_to_one() {
    for &(alpha, k_min, k_max) in &[
        (1.3, 1.0, 50.0),
        (2.0, 1.0, 1000.0),
        (2.5, 2.0, 50.0),
        (3.0, 1.0, 7.0),
    ] {
        let spec = PowerLawSpec::new(alpha, k_min, k_max).unwrap();
        let total = integrate(|k| spec.pdf(k), k_min, k_max, 1e-13);
        assert!(
            (total - 1.0).abs() <= 1e-10,
            "{alpha} {k_min} {k_max}: {total}"
        );
    }
}

#[test]
fn cdf_matches_quadrature() {
    let spec = PowerLawSpec::new(2.0, 1.0, 100.0).unwrap();
    for &k in &[1.5, 10.0, 42.0, 99.0] {
        let oracle = integrate(|t| spec.pdf(t), 1.0, k, 1e-13);
        assert!((spec.cdf(k) - oracle).abs() < 1e-12);
    }
}

#[test]
fn limit_branches_are_continuous() {
    for &k_max in &[10.0, 100.0, 1000.0] {
        for (center, branch) in [(2.0, Branch::LimitAlpha2), (3.0, Branch::LimitAlpha3)] {
            let limit = PowerLawSpec::new(center, 1.0, k_max)
                .unwrap()
                .predict_branch(branch)
                .unwrap();
            for &offset in &[-SWITCH_EPS, SWITCH_EPS] {
                let general = PowerLawSpec::new(center + offset, 1.0, k_max)
                    .unwrap()
                    .predict_branch(Branch::General)
                    .unwrap();
                for (a, b) in [
                    (limit.mean_k, general.mean_k),
                    (limit.k_ff, general.k_ff),
                    (limit.variance, general.variance),
                    (limit.var_to_mean, general.var_to_mean),
                ] {
                    assert!(rel(a, b) <= 1e-4, "alpha={center}{offset:+} k_max={k_max}");
                }
            }
        }
    }
}

#[test]
fn alpha_three_friends_equal_alpha_two_mean() {
    for &(k_min, k_max) in &[(1.0, 10.0), (2.0, 77.0), (3.3, 5000.0)] {
        let two = PowerLawSpec::new(2.0, k_min, k_max)
            .unwrap()
            .predict()
            .unwrap();
        let three = PowerLawSpec::new(3.0, k_min, k_max)
            .unwrap()
            .predict()
            .unwrap();
        assert!(rel(three.k_ff, two.mean_k) <= 1e-12);
    }
}

#[test]
fn ratio_monotone_on_grid() {
    let alphas: Vec<f64> = (0..=18).map(|i| 1.2 + 0.1 * i as f64).collect();
    let k_maxes: Vec<f64> = (0..=12).map(|i| 10f64.powf(1.0 + i as f64 / 4.0)).collect();
    let ratio = |a: f64, k: f64| {
        PowerLawSpec::new(a, 1.0, k)
            .unwrap()
            .predict()
            .unwrap()
            .var_to_mean
    };
    for &a in &alphas {
        for w in k_maxes.windows(2) {
            assert!(
                ratio(a, w[1]) > ratio(a, w[0]),
                "alpha={a} k_max {} -> {}",
                w[0],
                w[1]
            );
        }
    }
    for &k in k_maxes.iter().filter(|&&k| k >= 10.0) {
        for w in alphas.windows(2) {
            assert!(
                ratio(w[1], k) < ratio(w[0], k),
                "k_max={k} alpha {} -> {}",
                w[0],
                w[1]
            );
        }
    }
}

/// Kolmogorov-Smirnov distance against `F(k) = (1 - k^(1-a)) / (1 - k_max^(1-a))`
/// for `k_min = 1`, written out independently of the library.
fn ks_against_closed_form(sample: &mut [f64], alpha: f64, k_max: f64) -> f64 {
    sample.sort_by(f64::total_cmp);
    let n = sample.len() as f64;
    let s = 1.0 - alpha;
    let cdf = |k: f64| (1.0 - k.powf(s)) / (1.0 - k_max.powf(s));
    sample
        .iter()
        .enumerate()
        .map(|(i, &k)| {
            let f = cdf(k);
            (f - i as f64 / n).max((i + 1) as f64 / n - f)
        })
        .fold(0.0, f64::max)
}

#[test]
fn sampler_matches_cdf() {
    let spec = PowerLawSpec::new(2.0, 1.0, 1000.0).unwrap();
    for seed in 0..5 {
        let mut sample = spec.sample_continuous(100_000, seed);
        let d = ks_against_closed_form(&mut sample, 2.0, 1000.0);
        assert!(d < 0.02, "seed {seed}: {d}");
        // 1.36 / sqrt(n) is the 95% critical value
        assert!(d < 1.63 / (100_000f64).sqrt(), "seed {seed}: {d}");
    }
}

#[test]
fn rounded_sample_is_the_continuous_sample_rounded() {
    let spec = PowerLawSpec::new(2.2, 1.0, 300.0).unwrap();
    let cont = spec.sample_continuous(1000, 99);
    let ints = spec.sample_degrees(1000, 99).unwrap();
    for (x, k) in cont.iter().zip(ints.iter()) {
        assert!((x - *k as f64).abs() <= 0.5);
    }
}
