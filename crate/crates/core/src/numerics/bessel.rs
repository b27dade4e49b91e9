//! Bessel functions of real order and real positive argument.
//!
//! `J_ν`, `Y_ν` and `K_ν` use Temme's series for small arguments and
//! Steed's continued fractions otherwise, with the fractional order
//! `μ = ν - n` recurred up to `ν`. The Hankel modulus `J² + Y²` switches
//! to its asymptotic expansion for large arguments, where the continued
//! fraction for `J'/J` would need `O(x)` iterations.

use std::f64::consts::PI;

use super::gamma::{gamma, recip_gamma_1p_parts};
use crate::error::{domain, Result};

const EPS: f64 = 1e-16;
const FPMIN: f64 = 1e-300;
const MAX_ITER: usize = 100_000;
const TEMME_XMAX: f64 = 2.0;
const RESCALE: f64 = 1e250;

/// Below this argument `z^{2ν}|H_ν(z)|²` is replaced by its `z → 0` limit.
const HANKEL_SMALL_Z: f64 = 1e-30;

/// Temme's auxiliary gamma quantities `(Γ₁, Γ₂, 1/Γ(1+μ), 1/Γ(1-μ))`.
fn temme_gammas(mu: f64) -> (f64, f64, f64, f64) {
    let (even, odd) = recip_gamma_1p_parts(mu);
    (-odd, even, even + mu * odd, even - mu * odd)
}

fn check_order(func: &'static str, nu: f64, x: f64) -> Result<()> {
    if !nu.is_finite() {
        return Err(domain(func, format!("order {nu} is not finite")));
    }
    if !(x > 0.0) || !x.is_finite() {
        return Err(domain(func, format!("argument {x} must be positive and finite")));
    }
    Ok(())
}

/// `(K_μ(x), K_{μ+1}(x))` for `|μ| ≤ 1/2`, `x < 2`.
fn temme_k(mu: f64, x: f64) -> (f64, f64) {
    let x2 = 0.5 * x;
    let pimu = PI * mu;
    let fact = if pimu.abs() < EPS { 1.0 } else { pimu / pimu.sin() };
    let d = -x2.ln();
    let e = mu * d;
    let fact2 = if e.abs() < EPS { 1.0 } else { e.sinh() / e };
    let (gam1, gam2, gampl, gammi) = temme_gammas(mu);
    let mut ff = fact * (gam1 * e.cosh() + gam2 * fact2 * d);
    let mut sum = ff;
    let e = e.exp();
    let mut p = 0.5 * e / gampl;
    let mut q = 0.5 / (e * gammi);
    let mut c = 1.0;
    let dd = x2 * x2;
    let mut sum1 = p;
    let mu2 = mu * mu;
    for i in 1..MAX_ITER {
        let fi = i as f64;
        ff = (fi * ff + p + q) / (fi * fi - mu2);
        c *= dd / fi;
        p /= fi - mu;
        q /= fi + mu;
        let del = c * ff;
        sum += del;
        sum1 += c * (p - fi * ff);
        if del.abs() < sum.abs() * EPS {
            break;
        }
    }
    (sum, sum1 * 2.0 / x)
}

/// `(e^x K_μ(x), e^x K_{μ+1}(x))` for `|μ| ≤ 1/2`, `x ≥ 2`.
fn steed_k_scaled(mu: f64, x: f64) -> (f64, f64) {
    let mut b = 2.0 * (1.0 + x);
    let mut d = 1.0 / b;
    let mut delh = d;
    let mut h = d;
    let mut q1 = 0.0;
    let mut q2 = 1.0;
    let a1 = 0.25 - mu * mu;
    let mut q = a1;
    let mut c = a1;
    let mut a = -a1;
    let mut s = 1.0 + q * delh;
    for i in 1..MAX_ITER {
        let fi = i as f64;
        a -= 2.0 * fi;
        c = -a * c / (fi + 1.0);
        let qnew = (q1 - b * q2) / a;
        q1 = q2;
        q2 = qnew;
        q += c * qnew;
        b += 2.0;
        d = 1.0 / (b + a * d);
        delh *= b * d - 1.0;
        h += delh;
        let dels = q * delh;
        s += dels;
        if (dels / s).abs() < EPS {
            break;
        }
    }
    let h = a1 * h;
    let kmu = (PI / (2.0 * x)).sqrt() / s;
    let k1 = kmu * (mu + x + 0.5 - h) / x;
    (kmu, k1)
}

/// `ln K_ν(x)`; usable where `K_ν(x)` itself under- or overflows.
pub fn ln_bessel_k(nu: f64, x: f64) -> Result<f64> {
    check_order("bessel_k", nu, x)?;
    let nu = nu.abs();
    let nl = (nu + 0.5).floor();
    let mu = nu - nl;
    let (mut k_lo, mut k_hi, mut log_scale) = if x < TEMME_XMAX {
        let (a, b) = temme_k(mu, x);
        (a, b, 0.0)
    } else {
        let (a, b) = steed_k_scaled(mu, x);
        (a, b, -x)
    };
    let mut order = mu;
    for _ in 0..nl as usize {
        let next = 2.0 * (order + 1.0) / x * k_hi + k_lo;
        k_lo = k_hi;
        k_hi = next;
        order += 1.0;
        if k_hi > RESCALE {
            k_lo /= RESCALE;
            k_hi /= RESCALE;
            log_scale += RESCALE.ln();
        }
    }
    Ok(k_lo.ln() + log_scale)
}

/// Modified Bessel function of the second kind `K_ν(x)`, `x > 0`.
pub fn bessel_k(nu: f64, x: f64) -> Result<f64> {
    Ok(ln_bessel_k(nu, x)?.exp())
}

/// `(J_ν(x), Y_ν(x))` for `ν ≥ 0`, `x > 0`.
pub fn bessel_jy(nu: f64, x: f64) -> Result<(f64, f64)> {
    check_order("bessel_jy", nu, x)?;
    if nu < 0.0 {
        return Err(domain("bessel_jy", format!("order {nu} must be nonnegative")));
    }
    Ok(jy_unchecked(nu, x))
}

fn jy_unchecked(nu: f64, x: f64) -> (f64, f64) {
    let nl = if x < TEMME_XMAX { (nu + 0.5).floor() } else { (nu - x + 1.5).floor().max(0.0) };
    let mu = nu - nl;
    let mu2 = mu * mu;
    let xi = 1.0 / x;
    let xi2 = 2.0 * xi;
    let w = xi2 / PI;

    // CF1: f = J'_ν / J_ν (modified Lentz)
    let mut isign = 1.0;
    let mut h = (nu * xi).max(FPMIN);
    let mut b = xi2 * nu;
    let mut d = 0.0;
    let mut c = h;
    for _ in 0..MAX_ITER {
        b += xi2;
        d = b - d;
        if d.abs() < FPMIN {
            d = FPMIN;
        }
        c = b - 1.0 / c;
        if c.abs() < FPMIN {
            c = FPMIN;
        }
        d = 1.0 / d;
        let del = c * d;
        h *= del;
        if d < 0.0 {
            isign = -isign;
        }
        if (del - 1.0).abs() <= EPS {
            break;
        }
    }
    // downward recurrence to order μ with an arbitrary normalisation
    let mut rjl = isign * 1e-30;
    let mut rjpl = h * rjl;
    let rjl1 = rjl;
    let mut fact = nu * xi;
    for _ in 0..nl as usize {
        let rjtemp = fact * rjl + rjpl;
        fact -= xi;
        rjpl = fact * rjtemp - rjl;
        rjl = rjtemp;
    }
    if rjl == 0.0 {
        rjl = EPS;
    }
    let f = rjpl / rjl;

    let (rjmu, mut rymu, mut ry1);
    if x < TEMME_XMAX {
        let x2 = 0.5 * x;
        let pimu = PI * mu;
        let fact = if pimu.abs() < EPS { 1.0 } else { pimu / pimu.sin() };
        let d = -x2.ln();
        let e = mu * d;
        let fact2 = if e.abs() < EPS { 1.0 } else { e.sinh() / e };
        let (gam1, gam2, gampl, gammi) = temme_gammas(mu);
        let mut ff = 2.0 / PI * fact * (gam1 * e.cosh() + gam2 * fact2 * d);
        let e = e.exp();
        let mut p = e / (gampl * PI);
        let mut q = 1.0 / (e * PI * gammi);
        let pimu2 = 0.5 * pimu;
        let fact3 = if pimu2.abs() < EPS { 1.0 } else { pimu2.sin() / pimu2 };
        let r = PI * pimu2 * fact3 * fact3;
        let mut c = 1.0;
        let d = -x2 * x2;
        let mut sum = ff + r * q;
        let mut sum1 = p;
        for i in 1..MAX_ITER {
            let fi = i as f64;
            ff = (fi * ff + p + q) / (fi * fi - mu2);
            c *= d / fi;
            p /= fi - mu;
            q /= fi + mu;
            let del = c * (ff + r * q);
            sum += del;
            let del1 = c * p - fi * del;
            sum1 += del1;
            if del.abs() < (1.0 + sum.abs()) * EPS {
                break;
            }
        }
        rymu = -sum;
        ry1 = -sum1 * xi2;
        let rymup = mu * xi * rymu - ry1;
        rjmu = w / (rymup - f * rymu);
    } else {
        // CF2: p + iq = (J' + iY')/(J + iY) by Steed's method
        let mut a = 0.25 - mu2;
        let mut p = -0.5 * xi;
        let mut q = 1.0;
        let br = 2.0 * x;
        let mut bi = 2.0;
        let mut fact = a * xi / (p * p + q * q);
        let mut cr = br + q * fact;
        let mut ci = bi + p * fact;
        let mut den = br * br + bi * bi;
        let mut dr = br / den;
        let mut di = -bi / den;
        let mut dlr = cr * dr - ci * di;
        let mut dli = cr * di + ci * dr;
        let mut temp = p * dlr - q * dli;
        q = p * dli + q * dlr;
        p = temp;
        for i in 1..MAX_ITER {
            a += 2.0 * i as f64;
            bi += 2.0;
            dr = a * dr + br;
            di = a * di + bi;
            if dr.abs() + di.abs() < FPMIN {
                dr = FPMIN;
            }
            fact = a / (cr * cr + ci * ci);
            cr = br + cr * fact;
            ci = bi - ci * fact;
            if cr.abs() + ci.abs() < FPMIN {
                cr = FPMIN;
            }
            den = dr * dr + di * di;
            dr /= den;
            di /= -den;
            dlr = cr * dr - ci * di;
            dli = cr * di + ci * dr;
            temp = p * dlr - q * dli;
            q = p * dli + q * dlr;
            p = temp;
            if (dlr - 1.0).abs() + dli.abs() <= EPS {
                break;
            }
        }
        let gam = (p - f) / q;
        let mag = (w / ((p - f) * gam + q)).sqrt();
        rjmu = mag.copysign(rjl);
        rymu = rjmu * gam;
        let rymup = rymu * (p + q / gam);
        ry1 = mu * xi * rymu - rymup;
    }
    let scale = rjmu / rjl;
    let rj = rjl1 * scale;
    for i in 1..=nl as usize {
        let rytemp = (mu + i as f64) * xi2 * ry1 - rymu;
        rymu = ry1;
        ry1 = rytemp;
    }
    (rj, rymu)
}

fn hankel_asymptotic_threshold(nu: f64) -> f64 {
    (25.0f64).max(2.0 * nu * nu)
}

/// Asymptotic expansion of `(πz/2) (J_ν(z)² + Y_ν(z)²)` for large `z`.
fn modulus_asymptotic_factor(nu: f64, z: f64) -> f64 {
    let mu = 4.0 * nu * nu;
    let inv = 1.0 / (4.0 * z * z);
    let mut term = 1.0;
    let mut sum = 1.0;
    let mut prev = f64::INFINITY;
    for k in 1..60 {
        let odd = (2 * k - 1) as f64;
        term *= odd / (2.0 * k as f64) * (mu - odd * odd) * inv;
        if term.abs() > prev {
            break;
        }
        sum += term;
        if term.abs() < EPS * sum.abs() {
            break;
        }
        prev = term.abs();
    }
    sum
}

/// `|H^{(1)}_ν(z)|² = J_ν(z)² + Y_ν(z)²` for `ν ≥ 0`, `z > 0`.
pub fn hankel1_abs_sq(nu: f64, z: f64) -> Result<f64> {
    check_order("hankel1_abs_sq", nu, z)?;
    if nu < 0.0 {
        return Err(domain("hankel1_abs_sq", format!("order {nu} must be nonnegative")));
    }
    if z >= hankel_asymptotic_threshold(nu) {
        return Ok(2.0 / (PI * z) * modulus_asymptotic_factor(nu, z));
    }
    let (j, y) = jy_unchecked(nu, z);
    Ok(j * j + y * y)
}

/// `z^{2ν} |H^{(1)}_ν(z)|²`, bounded as `z → 0` with limit
/// `(2^ν Γ(ν) / π)²` for `ν > 0`.
pub fn hankel1_abs_sq_scaled(nu: f64, z: f64) -> Result<f64> {
    check_order("hankel1_abs_sq_scaled", nu, z)?;
    if nu < 0.0 {
        return Err(domain("hankel1_abs_sq_scaled", format!("order {nu} must be nonnegative")));
    }
    if z >= hankel_asymptotic_threshold(nu) {
        let ln = (2.0 * nu - 1.0) * z.ln() + (2.0 / PI).ln();
        return Ok(ln.exp() * modulus_asymptotic_factor(nu, z));
    }
    if z < HANKEL_SMALL_Z && nu > 0.0 {
        let lead = 2f64.powf(nu) * gamma(nu) / PI;
        return Ok(lead * lead);
    }
    let (j, y) = jy_unchecked(nu, z);
    let zn = z.powf(nu);
    Ok((zn * j) * (zn * j) + (zn * y) * (zn * y))
}
