//! GIG subordinator jumps via the bivariate point process `(x, z)`.
//!
//! The marginal intensity in `x` is the GIG Lévy density
//!
//! ```text
//! Q(x) = 2 e^{-xγ²/2} / (π² x) ∫₀^∞ e^{-z²x/(2δ²)} / (z |H_{|λ|}(z)|²) dz
//! ```
//!
//! Splitting the `z` range at `z₁` gives two pieces. For `z < z₁`,
//! `1/(z|H|²)` is bounded by `(π/2)(z/z₁)^{2|λ|-1}` and the resulting
//! marginal is dominated by the union of two gamma processes (`N1`). For
//! `z ≥ z₁` the bound `π/2` yields a tempered stable process with index
//! 1/2 (`N2`). Each candidate is thinned by the incomplete-gamma ratio,
//! marked with `z` from the conditional square-root gamma law on its side
//! of `z₁`, and finally thinned by the Hankel ratio.

use std::f64::consts::PI;

use rand::Rng;
use rand_distr::{Distribution, StandardNormal};

use super::marking::{truncated_gamma_above, truncated_gamma_below};
use super::params::{GhParams, GigParams, TruncationBudget};
use super::sequence::{Interval, JumpRecord, JumpSequence};
use super::shot_noise::{for_each_gamma, for_each_tempered_stable, AcceptanceLog, Stage};
use crate::error::{domain, Error, Result};
use crate::numerics::{
    gamma, hankel1_abs_sq, hankel1_abs_sq_scaled, lower_incomplete_gamma_scaled, upper_incomplete_gamma_exp_scaled,
};

/// Largest admissible `z₁`:
/// `(2^{1-2|λ|} π / Γ(|λ|)²)^{1/(1-2|λ|)}` for `λ < -1/2`.
pub fn z1_upper_bound(lambda: f64) -> Result<f64> {
    let nu = lambda.abs();
    if !(lambda < -0.5) || !lambda.is_finite() {
        return Err(domain(
            "z1_upper_bound",
            format!("bound is degenerate or undefined for lambda = {lambda}; need lambda < -0.5"),
        ));
    }
    let e = 1.0 - 2.0 * nu;
    let g = gamma(nu);
    Ok(((e * 2f64.ln() + PI.ln() - 2.0 * g.ln()) / e).exp())
}

fn check_z1(params: &GigParams, z1: f64) -> Result<()> {
    let bound = z1_upper_bound(params.lambda())?;
    if !(z1 > 0.0) || z1 > bound * (1.0 + 1e-12) {
        return Err(Error::InvalidParameter(format!(
            "z1 = {z1} must lie in (0, {bound}] for lambda = {}",
            params.lambda()
        )));
    }
    Ok(())
}

fn uniform_time<R: Rng + ?Sized>(interval: Interval, rng: &mut R) -> f64 {
    // (start, end]
    let t = interval.end - interval.len() * rng.random::<f64>();
    if t > interval.start {
        t
    } else {
        interval.end
    }
}

fn n1_into<R: Rng + ?Sized>(
    params: &GigParams,
    z1: f64,
    interval: Interval,
    budget: TruncationBudget,
    rng: &mut R,
    log: &mut AcceptanceLog,
    out: &mut Vec<JumpRecord>,
) -> Result<()> {
    check_z1(params, z1)?;
    if interval.is_empty() {
        return Ok(());
    }
    let nu = params.abs_lambda();
    let (delta, gam) = (params.delta(), params.gamma());
    let two_d2 = 2.0 * delta * delta;
    let z1_sq = z1 * z1;
    let len = interval.len();
    let ceiling = budget.epoch_ceiling(len);
    let a1 = z1 / (2.0 * PI * nu * (1.0 + nu)) * len;
    let b1 = 0.5 * gam * gam;
    let a2 = z1 / (2.0 * PI * (1.0 + nu)) * len;
    let b2 = b1 + z1_sq / two_d2;
    let hankel_const = 2.0 * z1.powf(2.0 * nu - 1.0) / PI;

    let mut process = |x: f64, rng: &mut R, log: &mut AcceptanceLog| -> Result<()> {
        let y = z1_sq * x / two_d2;
        let p_trunc = lower_incomplete_gamma_scaled(nu, y) * nu * (1.0 + nu) / (1.0 + nu * (-y).exp());
        if !log.thin(Stage::N1Truncation, p_trunc, rng)? {
            return Ok(());
        }
        let z = truncated_gamma_below(nu, x / two_d2, z1_sq, rng).sqrt();
        let p_mark = hankel_const / hankel1_abs_sq_scaled(nu, z)?;
        if log.thin(Stage::N1Marking, p_mark, rng)? {
            out.push(JumpRecord { time: uniform_time(interval, rng), z: x, w: None });
        }
        Ok(())
    };
    for_each_gamma(a1, b1, ceiling, rng, log, &mut process)?;
    for_each_gamma(a2, b2, ceiling, rng, log, &mut process)?;
    Ok(())
}

fn n2_into<R: Rng + ?Sized>(
    params: &GigParams,
    z1: f64,
    interval: Interval,
    budget: TruncationBudget,
    rng: &mut R,
    log: &mut AcceptanceLog,
    out: &mut Vec<JumpRecord>,
) -> Result<()> {
    check_z1(params, z1)?;
    if interval.is_empty() {
        return Ok(());
    }
    let nu = params.abs_lambda();
    let (delta, gam) = (params.delta(), params.gamma());
    let two_d2 = 2.0 * delta * delta;
    let z1_sq = z1 * z1;
    let len = interval.len();
    let c = delta / (2.0 * PI).sqrt() * len;
    let beta = z1_sq / two_d2 + 0.5 * gam * gam;
    let sqrt_pi = PI.sqrt();

    for_each_tempered_stable(c, 0.5, beta, budget.epoch_ceiling(len), rng, log, |x, rng, log| {
        let y = z1_sq * x / two_d2;
        let p_trunc = upper_incomplete_gamma_exp_scaled(0.5, y) / sqrt_pi;
        if !log.thin(Stage::N2Truncation, p_trunc, rng)? {
            return Ok(());
        }
        let z = truncated_gamma_above(0.5, x / two_d2, z1_sq, rng).sqrt();
        let p_mark = 2.0 / (PI * z * hankel1_abs_sq(nu, z)?);
        if log.thin(Stage::N2Marking, p_mark, rng)? {
            out.push(JumpRecord { time: uniform_time(interval, rng), z: x, w: None });
        }
        Ok(())
    })
}

/// Jumps from the gamma-dominated part `N1` (`z < z₁`).
pub fn sample_gig_n1<R: Rng + ?Sized>(
    params: &GigParams,
    z1: f64,
    interval: Interval,
    budget: TruncationBudget,
    rng: &mut R,
) -> Result<JumpSequence> {
    let mut out = Vec::new();
    n1_into(params, z1, interval, budget, rng, &mut AcceptanceLog::new(), &mut out)?;
    JumpSequence::from_unsorted(interval, out)
}

/// Jumps from the tempered-stable-dominated part `N2` (`z ≥ z₁`).
pub fn sample_gig_n2<R: Rng + ?Sized>(
    params: &GigParams,
    z1: f64,
    interval: Interval,
    budget: TruncationBudget,
    rng: &mut R,
) -> Result<JumpSequence> {
    let mut out = Vec::new();
    n2_into(params, z1, interval, budget, rng, &mut AcceptanceLog::new(), &mut out)?;
    JumpSequence::from_unsorted(interval, out)
}

/// GIG subordinator jumps on `interval`: the union of `N1` and `N2`,
/// time-sorted.
pub fn sample_gig<R: Rng + ?Sized>(
    params: &GigParams,
    z1: f64,
    interval: Interval,
    budget: TruncationBudget,
    rng: &mut R,
) -> Result<JumpSequence> {
    sample_gig_logged(params, z1, interval, budget, rng, &mut AcceptanceLog::new())
}

/// [`sample_gig`] recording every thinning probability in `log`.
pub fn sample_gig_logged<R: Rng + ?Sized>(
    params: &GigParams,
    z1: f64,
    interval: Interval,
    budget: TruncationBudget,
    rng: &mut R,
    log: &mut AcceptanceLog,
) -> Result<JumpSequence> {
    let mut out = Vec::new();
    n1_into(params, z1, interval, budget, rng, log, &mut out)?;
    n2_into(params, z1, interval, budget, rng, log, &mut out)?;
    JumpSequence::from_unsorted(interval, out)
}

/// Attaches GH jumps `W = μ_W Z + σ_W √Z U`, `U ~ N(0, 1)`.
pub fn attach_gh_jumps<R: Rng + ?Sized>(mut seq: JumpSequence, params: &GhParams, rng: &mut R) -> JumpSequence {
    for r in seq.records_mut() {
        let u: f64 = StandardNormal.sample(rng);
        r.w = Some(params.mu_w * r.z + params.sigma_w * r.z.sqrt() * u);
    }
    seq
}
