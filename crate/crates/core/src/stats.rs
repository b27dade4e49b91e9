//! Small statistical helpers for goodness-of-fit checks.

use crate::numerics::regularized_upper;

/// Two-sided one-sample Kolmogorov–Smirnov statistic of `sample` against
/// a CDF evaluated at the sorted sample points (`cdf_sorted[i]` is the CDF
/// at the i-th smallest observation).
pub fn ks_statistic_sorted(cdf_sorted: &[f64]) -> f64 {
    let n = cdf_sorted.len() as f64;
    cdf_sorted
        .iter()
        .enumerate()
        .map(|(i, &f)| {
            let lo = f - i as f64 / n;
            let hi = (i + 1) as f64 / n - f;
            lo.max(hi)
        })
        .fold(0.0, f64::max)
}

/// KS statistic of `sample` against `cdf`.
pub fn ks_statistic<F: Fn(f64) -> f64>(sample: &[f64], cdf: F) -> f64 {
    let mut sorted = sample.to_vec();
    sorted.sort_by(f64::total_cmp);
    let values: Vec<f64> = sorted.iter().map(|&x| cdf(x)).collect();
    ks_statistic_sorted(&values)
}

/// Asymptotic p-value of the KS statistic `d` at sample size `n`
/// (Stephens' finite-sample correction).
pub fn ks_p_value(d: f64, n: usize) -> f64 {
    let sn = (n as f64).sqrt();
    let lambda = (sn + 0.12 + 0.11 / sn) * d;
    if lambda < 1e-3 {
        return 1.0;
    }
    let mut sum = 0.0;
    let mut sign = 1.0;
    for k in 1..=100 {
        let term = sign * (-2.0 * (k * k) as f64 * lambda * lambda).exp();
        sum += term;
        if term.abs() < 1e-16 {
            break;
        }
        sign = -sign;
    }
    (2.0 * sum).clamp(0.0, 1.0)
}

/// Standard normal CDF.
pub fn normal_cdf(x: f64) -> f64 {
    // Φ(x) = ½ erfc(-x/√2), erfc(u) = Q(½, u²) for u ≥ 0
    let u = x / std::f64::consts::SQRT_2;
    if u < 0.0 {
        0.5 * regularized_upper(0.5, u * u)
    } else {
        1.0 - 0.5 * regularized_upper(0.5, u * u)
    }
}

/// Sample mean and the standard error of the mean.
pub fn mean_and_se(xs: &[f64]) -> (f64, f64) {
    let n = xs.len() as f64;
    let mean = xs.iter().sum::<f64>() / n;
    let var = xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1.0);
    (mean, (var / n).sqrt())
}
