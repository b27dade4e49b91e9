//! Truncated gamma draws used to mark candidate jumps with `z = √Y`.
//!
//! Each sampler is exact. Cheap rejection schemes cover the regimes the
//! GIG construction visits; inversion of the regularised incomplete gamma
//! function by bisection handles the rest.

use rand::Rng;
use rand_distr::{Distribution, Exp1, Gamma};

use crate::numerics::{regularized_lower, regularized_upper};

const MAX_REJECTIONS: usize = 64;

fn gamma_draw<R: Rng + ?Sized>(shape: f64, rate: f64, rng: &mut R) -> f64 {
    Gamma::new(shape, 1.0 / rate).expect("shape and rate validated by caller").sample(rng)
}

fn bisect(f: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64) -> f64 {
    // f increasing, f(lo) < 0 < f(hi)
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if f(mid) < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo <= 1e-12 * hi {
            break;
        }
    }
    0.5 * (lo + hi)
}

fn open_unit<R: Rng + ?Sized>(rng: &mut R) -> f64 {
    // (0, 1]
    1.0 - rng.random::<f64>()
}

/// `Y ~ Gamma(shape, rate)` conditioned on `Y < c`.
pub fn truncated_gamma_below<R: Rng + ?Sized>(shape: f64, rate: f64, c: f64, rng: &mut R) -> f64 {
    let w = rate * c;
    if w <= 1.0 {
        // propose c·U^{1/shape} (density ∝ y^{shape-1} on (0, c)),
        // accept with e^{-rate·y} ≥ e^{-1}
        loop {
            let y = c * open_unit(rng).powf(1.0 / shape);
            if rng.random::<f64>() < (-rate * y).exp() {
                return y;
            }
        }
    }
    let mass = regularized_lower(shape, w);
    if mass >= 0.25 {
        for _ in 0..MAX_REJECTIONS {
            let y = gamma_draw(shape, rate, rng);
            if y < c {
                return y;
            }
        }
    }
    let target = open_unit(rng) * mass;
    bisect(|y| regularized_lower(shape, rate * y) - target, 0.0, c)
}

/// `Y ~ Gamma(shape, rate)` conditioned on `Y ≥ c`.
pub fn truncated_gamma_above<R: Rng + ?Sized>(shape: f64, rate: f64, c: f64, rng: &mut R) -> f64 {
    let w = rate * c;
    if w <= 0.5 && shape >= 0.5 {
        // tail mass Q(shape, w) ≥ Q(1/2, 1/2) ≈ 0.32
        for _ in 0..MAX_REJECTIONS {
            let y = gamma_draw(shape, rate, rng);
            if y >= c {
                return y;
            }
        }
    } else if shape <= 1.0 && w > 0.5 {
        // propose c + Exp(rate), accept with (y/c)^{shape-1} ≤ 1
        for _ in 0..MAX_REJECTIONS {
            let e: f64 = Exp1.sample(rng);
            let y = c + e / rate;
            if rng.random::<f64>() < (y / c).powf(shape - 1.0) {
                return y;
            }
        }
    }
    let mass = regularized_upper(shape, w);
    let target = open_unit(rng) * mass;
    let mut hi = 2.0 * c.max(shape / rate);
    while regularized_upper(shape, rate * hi) > target {
        hi *= 2.0;
    }
    // g(y) = target - Q(shape, rate y) is increasing in y
    bisect(|y| target - regularized_upper(shape, rate * y), c, hi)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::stream_rng;
    use crate::stats::{ks_p_value, ks_statistic};

    fn check_below(shape: f64, rate: f64, c: f64, seed: u64) {
        let mut rng = stream_rng(seed, 0);
        let xs: Vec<f64> = (0..4000).map(|_| truncated_gamma_below(shape, rate, c, &mut rng)).collect();
        assert!(xs.iter().all(|&y| y > 0.0 && y < c));
        let norm = regularized_lower(shape, rate * c);
        let d = ks_statistic(&xs, |y| regularized_lower(shape, rate * y) / norm);
        assert!(ks_p_value(d, xs.len()) > 1e-3, "shape={shape} rate={rate} c={c} d={d}");
    }

    fn check_above(shape: f64, rate: f64, c: f64, seed: u64) {
        let mut rng = stream_rng(seed, 0);
        let xs: Vec<f64> = (0..4000).map(|_| truncated_gamma_above(shape, rate, c, &mut rng)).collect();
        assert!(xs.iter().all(|&y| y >= c));
        let norm = regularized_upper(shape, rate * c);
        let d = ks_statistic(&xs, |y| 1.0 - regularized_upper(shape, rate * y) / norm);
        assert!(ks_p_value(d, xs.len()) > 1e-3, "shape={shape} rate={rate} c={c} d={d}");
    }

    #[test]
    fn below_in_every_regime() {
        check_below(0.8, 0.1, 0.25, 1); // w ≤ 1
        check_below(0.8, 20.0, 0.25, 2); // gamma rejection
        check_below(3.5, 2.0, 0.9, 3); // inversion
    }

    #[test]
    fn above_in_every_regime() {
        check_above(0.5, 0.1, 0.25, 4); // gamma rejection
        check_above(0.5, 40.0, 0.25, 5); // shifted exponential
        check_above(2.5, 30.0, 0.4, 6); // inversion
    }
}
