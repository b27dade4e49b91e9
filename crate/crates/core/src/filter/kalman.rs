use std::f64::consts::PI;

use nalgebra::DMatrix;

use super::state::GaussianState;
use crate::error::{Error, Result};
use crate::jumps::JumpSequence;
use crate::ssm::{cond_moments, LinearSsm};

fn symmetrise(m: &DMatrix<f64>) -> DMatrix<f64> {
    (m + m.transpose()) * 0.5
}

/// Prediction from `prior.time` to `t` given the jumps on that interval:
/// `μ = F μ_s + m`, `C = F C_s Fᵀ + S`.
pub fn kalman_predict(prior: &GaussianState, ssm: &LinearSsm, seq: &JumpSequence, t: f64) -> Result<GaussianState> {
    if prior.dim() != ssm.dim() {
        return Err(Error::Dimension(format!("state has dimension {}, model has {}", prior.dim(), ssm.dim())));
    }
    let s = prior.time;
    if !(t >= s) {
        return Err(Error::InvalidParameter(format!("prediction target {t} precedes prior time {s}")));
    }
    let f = ssm.transition(t - s)?;
    let mom = cond_moments(ssm, seq, s, t)?;
    let mu = &f * &prior.mu + mom.m;
    let cov = symmetrise(&(&f * &prior.cov * f.transpose() + mom.s));
    Ok(GaussianState { mu, cov, time: t })
}

/// Correction with the scalar observation `y = H x + σ_ε ε`.
///
/// Returns the posterior and `log N(y; H μ, H C Hᵀ + σ_ε²)`. The covariance
/// update uses the Joseph form.
pub fn kalman_correct(pred: &GaussianState, ssm: &LinearSsm, y: f64) -> Result<(GaussianState, f64)> {
    if pred.dim() != ssm.dim() {
        return Err(Error::Dimension(format!("state has dimension {}, model has {}", pred.dim(), ssm.dim())));
    }
    if !y.is_finite() {
        return Err(Error::NonFinite("observation"));
    }
    let h = ssm.h();
    let r = ssm.sigma_eps() * ssm.sigma_eps();
    let ch = &pred.cov * h.transpose();
    let v = (h * &ch)[(0, 0)] + r;
    if !(v > 0.0) || !v.is_finite() {
        return Err(Error::InnovationVariance(v));
    }
    let innov = y - (h * &pred.mu)[(0, 0)];
    let k = ch / v;
    let mu = &pred.mu + &k * innov;
    let d = pred.dim();
    let ikh = DMatrix::identity(d, d) - &k * h;
    let cov = symmetrise(&(&ikh * &pred.cov * ikh.transpose() + &k * k.transpose() * r));
    let log_lik = -0.5 * ((2.0 * PI * v).ln() + innov * innov / v);
    Ok((GaussianState { mu, cov, time: pred.time }, log_lik))
}
