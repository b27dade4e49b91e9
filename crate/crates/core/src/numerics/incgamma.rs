//! Incomplete gamma functions.
//!
//! Series below `x < a + 1`, Lentz continued fraction above. The
//! complementary function is obtained by subtraction from `Γ(a)` so that
//! `γ(a,x) + Γ(a,x) = Γ(a)` holds to rounding.

use super::gamma::{gamma, ln_gamma};
use crate::error::{domain, Result};

const EPS: f64 = 1e-16;
const TINY: f64 = 1e-300;
const MAX_ITER: usize = 10_000;

/// `Σ_{n≥0} x^n / (a (a+1) ... (a+n))`, so that `γ(a,x) = x^a e^{-x} S`.
fn lower_series(a: f64, x: f64) -> f64 {
    let mut ap = a;
    let mut term = 1.0 / a;
    let mut sum = term;
    for _ in 0..MAX_ITER {
        ap += 1.0;
        term *= x / ap;
        sum += term;
        if term.abs() < sum.abs() * EPS {
            break;
        }
    }
    sum
}

/// Continued fraction `h` with `Γ(a,x) = x^a e^{-x} h`, valid for `x ≥ a + 1`.
fn upper_cf(a: f64, x: f64) -> f64 {
    let mut b = x + 1.0 - a;
    let mut c = 1.0 / TINY;
    let mut d = 1.0 / b;
    let mut h = d;
    for i in 1..MAX_ITER {
        let an = -(i as f64) * (i as f64 - a);
        b += 2.0;
        d = an * d + b;
        if d.abs() < TINY {
            d = TINY;
        }
        c = b + an / c;
        if c.abs() < TINY {
            c = TINY;
        }
        d = 1.0 / d;
        let del = d * c;
        h *= del;
        if (del - 1.0).abs() < EPS {
            break;
        }
    }
    h
}

fn check(func: &'static str, a: f64, x: f64) -> Result<()> {
    if !(a > 0.0) || !a.is_finite() {
        return Err(domain(func, format!("shape a = {a} must be positive and finite")));
    }
    if !(x >= 0.0) {
        return Err(domain(func, format!("x = {x} must be nonnegative")));
    }
    Ok(())
}

/// Lower incomplete gamma `γ(a, x) = ∫₀ˣ t^{a-1} e^{-t} dt`.
pub fn lower_incomplete_gamma(a: f64, x: f64) -> Result<f64> {
    check("lower_incomplete_gamma", a, x)?;
    Ok(lower_unchecked(a, x))
}

/// Upper incomplete gamma `Γ(a, x) = ∫ₓ^∞ t^{a-1} e^{-t} dt`.
pub fn upper_incomplete_gamma(a: f64, x: f64) -> Result<f64> {
    check("upper_incomplete_gamma", a, x)?;
    Ok(upper_unchecked(a, x))
}

pub(crate) fn lower_unchecked(a: f64, x: f64) -> f64 {
    if x == 0.0 {
        0.0
    } else if x.is_infinite() {
        gamma(a)
    } else if x < a + 1.0 {
        (a * x.ln() - x).exp() * lower_series(a, x)
    } else {
        gamma(a) - (a * x.ln() - x).exp() * upper_cf(a, x)
    }
}

pub(crate) fn upper_unchecked(a: f64, x: f64) -> f64 {
    if x == 0.0 {
        gamma(a)
    } else if x.is_infinite() {
        0.0
    } else if x < a + 1.0 {
        gamma(a) - (a * x.ln() - x).exp() * lower_series(a, x)
    } else {
        (a * x.ln() - x).exp() * upper_cf(a, x)
    }
}

/// `γ(a, x) / x^a`, finite as `x → 0` (limit `1/a`).
pub fn lower_incomplete_gamma_scaled(a: f64, x: f64) -> f64 {
    if x == 0.0 {
        1.0 / a
    } else if x < a + 1.0 {
        (-x).exp() * lower_series(a, x)
    } else {
        (ln_gamma(a) - a * x.ln()).exp() - (-x).exp() * upper_cf(a, x)
    }
}

/// `Γ(a, x) e^{x}`, which stays bounded for large `x` when `a ≤ 1`.
pub fn upper_incomplete_gamma_exp_scaled(a: f64, x: f64) -> f64 {
    if x < a + 1.0 {
        gamma(a) * x.exp() - x.powf(a) * lower_series(a, x)
    } else {
        (a * x.ln()).exp() * upper_cf(a, x)
    }
}

/// Regularised lower function `P(a, x) = γ(a,x)/Γ(a)`.
pub fn regularized_lower(a: f64, x: f64) -> f64 {
    if x <= 0.0 {
        0.0
    } else if x.is_infinite() {
        1.0
    } else if x < a + 1.0 {
        (a * x.ln() - x - ln_gamma(a)).exp() * lower_series(a, x)
    } else {
        1.0 - (a * x.ln() - x - ln_gamma(a)).exp() * upper_cf(a, x)
    }
}

/// Regularised upper function `Q(a, x) = Γ(a,x)/Γ(a)`.
pub fn regularized_upper(a: f64, x: f64) -> f64 {
    if x <= 0.0 {
        1.0
    } else if x.is_infinite() {
        0.0
    } else if x < a + 1.0 {
        1.0 - (a * x.ln() - x - ln_gamma(a)).exp() * lower_series(a, x)
    } else {
        (a * x.ln() - x - ln_gamma(a)).exp() * upper_cf(a, x)
    }
}
