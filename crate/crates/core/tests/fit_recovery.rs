use fparadox::fit::{alpha_from_moment, fit_alpha, Moment};
use fparadox::PowerLawSpec;

const N: usize = 100_000;

#[test]
fn unbounded_mle_recovers_alpha() {
    let spec = PowerLawSpec::unbounded(2.5, 1.0).unwrap();
    for seed in 0..20 {
        let data = spec.sample_continuous(N, seed);
        let fit = fit_alpha(&data, 1.0, f64::INFINITY).unwrap();
        assert!(
            (2.45..=2.55).contains(&fit.alpha_hat),
            "seed {seed}: {}",
            fit.alpha_hat
        );
        assert_eq!(fit.n_tail, N);
        assert!(
            fit.ks_distance < 0.01,
            "seed {seed}: ks {}",
            fit.ks_distance
        );
    }
}

fn coverage(spec: &PowerLawSpec, seeds: std::ops::Range<u64>) -> usize {
    seeds
        .filter(|&seed| {
            let data = spec.sample_continuous(N, 1000 + seed);
            let fit = fit_alpha(&data, spec.k_min(), spec.k_max()).unwrap();
            (fit.alpha_hat - spec.alpha()).abs() <= 3.0 * fit.stderr
        })
        .count()
}

#[test]
fn three_standard_errors_cover_truth() {
    let unbounded = PowerLawSpec::unbounded(2.5, 1.0).unwrap();
    assert!(coverage(&unbounded, 0..40) >= 38);
    let truncated = PowerLawSpec::new(2.0, 1.0, 1000.0).unwrap();
    assert!(coverage(&truncated, 0..40) >= 38);
}

#[test]
fn truncated_mle_recovers_alpha() {
    for &(alpha, k_max) in &[(1.5, 100.0), (2.0, 1000.0), (3.0, 50.0)] {
        let spec = PowerLawSpec::new(alpha, 1.0, k_max).unwrap();
        let data = spec.sample_continuous(N, 7);
        let fit = fit_alpha(&data, 1.0, k_max).unwrap();
        assert!(
            (fit.alpha_hat - alpha).abs() < 4.0 * fit.stderr,
            "{alpha}: {}",
            fit.alpha_hat
        );
    }
}

#[test]
fn moments_invert_across_the_grid() {
    for &k_max in &[10.0, 100.0, 1000.0, 1e4] {
        for i in 0..=23 {
            let alpha = 1.2 + 0.1 * i as f64;
            let p = PowerLawSpec::new(alpha, 1.0, k_max)
                .unwrap()
                .predict()
                .unwrap();
            for (which, value) in [
                (Moment::Mean, p.mean_k),
                (Moment::Variance, p.variance),
                (Moment::VarToMean, p.var_to_mean),
            ] {
                let a = alpha_from_moment(value, which, 1.0, k_max).unwrap();
                assert!(
                    (a - alpha).abs() <= 1e-6,
                    "{which:?} k_max {k_max}: {alpha} -> {a}"
                );
            }
        }
    }
}
