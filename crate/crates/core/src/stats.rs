//! Tail-index estimation, goodness of fit and dispersion diagnostics.

use serde::Serialize;
use statrs::distribution::{ChiSquared, ContinuousCDF};

use crate::error::{AdrcmError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TailIndexEstimate {
    pub alpha_hat: f64,
    pub k_used: usize,
    pub ci_low: f64,
    pub ci_high: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GofReport {
    pub statistic: f64,
    pub p_value: f64,
    pub n_samples: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DispersionReport {
    pub gof: GofReport,
    pub mean: f64,
    pub variance: f64,
    /// variance / mean
    pub index: f64,
}

/// `⌈0.1·n⌉` clamped to `[10, n/2]`.
pub fn default_hill_k(n: usize) -> usize {
    let k = (n as f64 * 0.1).ceil() as usize;
    k.max(10).min(n / 2)
}

/// Hill estimator over the `k` largest samples.
pub fn hill_estimator(samples: &[f64], k: usize) -> Result<TailIndexEstimate> {
    if samples.iter().any(|&x| !(x > 0.0) || !x.is_finite()) {
        return Err(AdrcmError::ParamDomain("hill samples must be positive and finite".into()));
    }
    if k < 5 || k >= samples.len() {
        return Err(AdrcmError::ParamDomain(format!(
            "hill k must satisfy 5 <= k < {}, got {k}",
            samples.len()
        )));
    }
    let mut sorted = samples.to_vec();
    sorted.sort_unstable_by(|a, b| b.total_cmp(a));
    let threshold = sorted[k].ln();
    let mean_log = sorted[..k].iter().map(|x| x.ln() - threshold).sum::<f64>() / k as f64;
    if mean_log <= 0.0 {
        return Err(AdrcmError::Degenerate("degenerate tail: top order statistics are equal".into()));
    }
    let alpha_hat = 1.0 / mean_log;
    let half = 1.96 / (k as f64).sqrt();
    Ok(TailIndexEstimate {
        alpha_hat,
        k_used: k,
        ci_low: alpha_hat * (1.0 - half),
        ci_high: alpha_hat * (1.0 + half),
    })
}

/// Survival function of the Kolmogorov distribution, `P(K > x)`.
pub fn kolmogorov_sf(x: f64) -> f64 {
    if x <= 0.0 {
        return 1.0;
    }
    if x < 1.0 {
        // Jacobi theta form converges fast for small x.
        let c = std::f64::consts::PI.powi(2) / (8.0 * x * x);
        let mut sum = 0.0;
        for k in 1..200 {
            let t = (-((2 * k - 1) as f64).powi(2) * c).exp();
            sum += t;
            if t <= 1e-8 * sum {
                break;
            }
        }
        return (1.0 - (2.0 * std::f64::consts::PI).sqrt() / x * sum).clamp(0.0, 1.0);
    }
    let mut sum = 0.0;
    for k in 1..200 {
        let t = (-2.0 * (k * k) as f64 * x * x).exp();
        sum += if k % 2 == 1 { t } else { -t };
        if t <= 1e-8 * sum.abs() {
            break;
        }
    }
    (2.0 * sum).clamp(0.0, 1.0)
}

/// One-sample Kolmogorov–Smirnov test with the asymptotic p-value.
pub fn ks_test(samples: &[f64], cdf: impl Fn(f64) -> f64) -> Result<GofReport> {
    if samples.is_empty() {
        return Err(AdrcmError::ParamDomain("ks_test needs at least one sample".into()));
    }
    let mut sorted = samples.to_vec();
    sorted.sort_unstable_by(f64::total_cmp);
    let n = sorted.len() as f64;
    let mut d: f64 = 0.0;
    for (i, &x) in sorted.iter().enumerate() {
        let f = cdf(x);
        d = d.max(f - i as f64 / n).max((i + 1) as f64 / n - f);
    }
    Ok(GofReport {
        statistic: d,
        p_value: kolmogorov_sf(n.sqrt() * d),
        n_samples: sorted.len(),
    })
}

pub fn mean_variance(xs: &[f64]) -> (f64, f64) {
    let n = xs.len() as f64;
    let mean = xs.iter().sum::<f64>() / n;
    let var = if xs.len() > 1 {
        xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1.0)
    } else {
        0.0
    };
    (mean, var)
}

/// Chi-square dispersion test of a Poisson hypothesis.
pub fn poisson_dispersion(counts: &[u64]) -> Result<DispersionReport> {
    if counts.len() < 2 {
        return Err(AdrcmError::ParamDomain("dispersion needs at least two counts".into()));
    }
    let xs: Vec<f64> = counts.iter().map(|&c| c as f64).collect();
    let (mean, variance) = mean_variance(&xs);
    if mean == 0.0 {
        return Err(AdrcmError::Degenerate("degenerate: all counts are zero".into()));
    }
    let df = (counts.len() - 1) as f64;
    let statistic = df * variance / mean;
    let chi = ChiSquared::new(df).expect("df > 0");
    let lower = chi.cdf(statistic);
    let p_value = (2.0 * lower.min(1.0 - lower)).clamp(0.0, 1.0);
    Ok(DispersionReport {
        gof: GofReport {
            statistic,
            p_value,
            n_samples: counts.len(),
        },
        mean,
        variance,
        index: variance / mean,
    })
}

/// `N(y) = #{v : v/scale > y}` per threshold.
pub fn exceedance_counts(values: &[f64], scale: f64, thresholds: &[f64]) -> Vec<u64> {
    thresholds
        .iter()
        .map(|&y| values.iter().filter(|&&v| v / scale > y).count() as u64)
        .collect()
}

/// Least-squares slope of `ys` on `xs`; `None` with fewer than two distinct
/// abscissae.
pub fn ols_slope(xs: &[f64], ys: &[f64]) -> Option<f64> {
    if xs.len() != ys.len() || xs.len() < 2 {
        return None;
    }
    let (mx, _) = mean_variance(xs);
    let (my, _) = mean_variance(ys);
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    if sxx == 0.0 {
        return None;
    }
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    Some(sxy / sxx)
}

/// Empirical quantile by linear interpolation between order statistics.
pub fn quantile(sorted: &[f64], p: f64) -> f64 {
    if sorted.is_empty() {
        return f64::NAN;
    }
    let h = p.clamp(0.0, 1.0) * (sorted.len() - 1) as f64;
    let lo = h.floor() as usize;
    let hi = h.ceil() as usize;
    sorted[lo] + (h - lo as f64) * (sorted[hi] - sorted[lo])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::stream;
    use proptest::prelude::*;
    use rand::Rng;
    use rand_distr::{Distribution, Geometric, Pareto, Poisson};

    #[test]
    fn hill_recovers_pareto_index() {
        let mut rng = stream(1, 0, 0);
        let d = Pareto::new(1.0, 2.0).unwrap();
        let xs: Vec<f64> = (0..100_000).map(|_| d.sample(&mut rng)).collect();
        let est = hill_estimator(&xs, 1000).unwrap();
        assert!((1.8..=2.2).contains(&est.alpha_hat), "{est:?}");
        assert!(est.ci_low <= est.alpha_hat && est.alpha_hat <= est.ci_high);
    }

    #[test]
    fn hill_errors() {
        assert!(matches!(hill_estimator(&[3.0; 50], 10), Err(AdrcmError::Degenerate(_))));
        assert!(hill_estimator(&[1.0, 2.0, -1.0, 4.0, 5.0, 6.0, 7.0], 5).is_err());
        assert!(hill_estimator(&[1.0; 6], 6).is_err());
        assert!(hill_estimator(&[1.0; 60], 4).is_err());
    }

    #[test]
    fn hill_default_k() {
        assert_eq!(default_hill_k(1000), 100);
        assert_eq!(default_hill_k(50), 10);
        assert_eq!(default_hill_k(12), 6);
    }

    #[test]
    fn kolmogorov_series_agree_at_switch() {
        // both branches evaluated just around x = 1
        let a = kolmogorov_sf(0.999_999);
        let b = kolmogorov_sf(1.0);
        assert!((a - b).abs() < 1e-5);
        assert!((kolmogorov_sf(1.358) - 0.05).abs() < 1e-3);
        assert!(kolmogorov_sf(0.2) > 0.999_99);
    }

    #[test]
    fn ks_null_calibration() {
        let mut rejections = 0;
        for rep in 0..200 {
            let mut rng = stream(2, 1, rep);
            let xs: Vec<f64> = (0..500).map(|_| rng.random::<f64>()).collect();
            if ks_test(&xs, |x| x.clamp(0.0, 1.0)).unwrap().p_value < 0.05 {
                rejections += 1;
            }
        }
        let frac = rejections as f64 / 200.0;
        assert!((0.02..=0.09).contains(&frac), "{frac}");
    }

    #[test]
    fn ks_power_and_degenerate() {
        let mut rng = stream(2, 2, 0);
        let xs: Vec<f64> = (0..1000).map(|_| 0.1 + rng.random::<f64>()).collect();
        assert!(ks_test(&xs, |x| x.clamp(0.0, 1.0)).unwrap().p_value < 0.01);
        let same = vec![0.3; 20];
        let r = ks_test(&same, |x| x.clamp(0.0, 1.0)).unwrap();
        assert!(r.statistic >= 0.5 && r.p_value < 1e-6);
        assert!(ks_test(&[], |x| x).is_err());
    }

    #[test]
    fn dispersion_cases() {
        let mut rng = stream(3, 0, 0);
        let pois = Poisson::new(3.0).unwrap();
        let xs: Vec<u64> = (0..1000).map(|_| pois.sample(&mut rng) as u64).collect();
        let r = poisson_dispersion(&xs).unwrap();
        assert!((0.85..=1.15).contains(&r.index), "{r:?}");

        let r = poisson_dispersion(&[4; 100]).unwrap();
        assert_eq!(r.index, 0.0);
        assert!(r.gof.p_value < 1e-10);

        let geo = Geometric::new(0.5).unwrap();
        let xs: Vec<u64> = (0..1000).map(|_| geo.sample(&mut rng)).collect();
        let r = poisson_dispersion(&xs).unwrap();
        assert!(r.index > 1.5 && r.gof.p_value < 0.01, "{r:?}");

        assert!(matches!(poisson_dispersion(&[0; 30]), Err(AdrcmError::Degenerate(_))));
    }

    #[test]
    fn exceedances() {
        assert_eq!(exceedance_counts(&[1.0, 2.0, 3.0], 1.0, &[0.5, 2.5]), vec![3, 1]);
        assert_eq!(exceedance_counts(&[1.0, 2.0, 3.0], 1.0, &[10.0]), vec![0]);
    }

    #[test]
    fn slope_and_quantile() {
        assert_eq!(ols_slope(&[1.0], &[2.0]), None);
        assert_eq!(ols_slope(&[1.0, 1.0], &[2.0, 3.0]), None);
        let s = ols_slope(&[0.0, 1.0, 2.0], &[1.0, 3.0, 5.0]).unwrap();
        assert!((s - 2.0).abs() < 1e-12);
        assert_eq!(quantile(&[1.0, 2.0, 3.0], 0.5), 2.0);
        assert_eq!(quantile(&[1.0, 3.0], 0.25), 1.5);
    }

    proptest! {
        #[test]
        fn hill_scale_invariant(xs in proptest::collection::vec(0.01f64..100.0, 30..80), c in 0.1f64..10.0) {
            let a = hill_estimator(&xs, 10);
            let scaled: Vec<f64> = xs.iter().map(|x| x * c).collect();
            let b = hill_estimator(&scaled, 10);
            if let (Ok(a), Ok(b)) = (a, b) {
                prop_assert!((a.alpha_hat - b.alpha_hat).abs() <= 1e-9 * a.alpha_hat);
            }
        }

        #[test]
        fn exceedances_nonincreasing(xs in proptest::collection::vec(0.0f64..10.0, 0..50),
                                     mut ys in proptest::collection::vec(0.01f64..12.0, 1..8)) {
            ys.sort_by(f64::total_cmp);
            let n = exceedance_counts(&xs, 1.0, &ys);
            prop_assert!(n.windows(2).all(|w| w[0] >= w[1]));
        }

        #[test]
        fn ks_transform_invariant(xs in proptest::collection::vec(0.001f64..0.999, 10..40)) {
            // Uniform cdf on raw samples equals exponential cdf on -ln(1-x).
            let a = ks_test(&xs, |x| x.clamp(0.0, 1.0)).unwrap();
            let ys: Vec<f64> = xs.iter().map(|x| -(1.0 - x).ln()).collect();
            let b = ks_test(&ys, |y| 1.0 - (-y).exp()).unwrap();
            prop_assert!((a.statistic - b.statistic).abs() < 1e-9);
        }
    }
}
