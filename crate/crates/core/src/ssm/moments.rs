use nalgebra::{DMatrix, DVector};

use super::langevin::ft_pair;
use super::model::{Dynamics, LinearSsm};
use crate::error::{Error, Result};
use crate::jumps::JumpSequence;

/// Mean and covariance of `Σ f_t(V_i) W_i` given the subordinator jumps.
#[derive(Debug, Clone, PartialEq)]
pub struct CondGaussMoments {
    pub m: DVector<f64>,
    pub s: DMatrix<f64>,
}

impl CondGaussMoments {
    pub fn zeros(d: usize) -> Self {
        Self { m: DVector::zeros(d), s: DMatrix::zeros(d, d) }
    }
}

/// Conditional moments of the state increment over `(s, t]`.
///
/// A nonzero location `μ` adds the exact response `μ ∫_s^t e^{A(t-u)} L du`
/// to `m`.
pub fn cond_moments(ssm: &LinearSsm, seq: &JumpSequence, s: f64, t: f64) -> Result<CondGaussMoments> {
    let iv = seq.interval();
    if !(s <= t) || iv.start < s || iv.end > t {
        return Err(Error::InvalidParameter(format!(
            "jump interval ({}, {}] is not inside ({s}, {t}]",
            iv.start, iv.end
        )));
    }
    let gh = ssm.gh();
    let (mu_w, var_w) = (gh.mu_w, gh.sigma_w * gh.sigma_w);
    let d = ssm.dim();
    let mut out = match ssm.dynamics() {
        Dynamics::Langevin { theta } => {
            let (mut m0, mut m1, mut s00, mut s01, mut s11) = (0.0, 0.0, 0.0, 0.0, 0.0);
            for r in seq.iter() {
                let (a, f) = ft_pair(theta, t - r.time);
                let zm = mu_w * r.z;
                let zv = var_w * r.z;
                m0 += a * zm;
                m1 += f * zm;
                s00 += a * a * zv;
                s01 += a * f * zv;
                s11 += f * f * zv;
            }
            CondGaussMoments {
                m: DVector::from_vec(vec![m0, m1]),
                s: DMatrix::from_row_slice(2, 2, &[s00, s01, s01, s11]),
            }
        }
        Dynamics::General => {
            let mut acc = CondGaussMoments::zeros(d);
            for r in seq.iter() {
                let f = ssm.impulse(t - r.time)?;
                acc.m.axpy(mu_w * r.z, &f, 1.0);
                acc.s.ger(var_w * r.z, &f, &f, 1.0);
            }
            acc.s = (&acc.s + acc.s.transpose()) * 0.5;
            acc
        }
    };
    if gh.mu != 0.0 {
        out.m.axpy(gh.mu, &ssm.drift_response(t - s)?, 1.0);
    }
    Ok(out)
}
