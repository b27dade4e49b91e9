use nalgebra::{DMatrix, DVector};
use rand::Rng;
use rand_distr::{Distribution, StandardNormal};

use super::model::LinearSsm;
use super::moments::cond_moments;
use crate::error::{Error, Result};
use crate::jumps::{sample_gig, Interval, JumpSequence, TruncationBudget};

const NEG_EIG_HARD: f64 = -1e-8;

/// Square root `R` with `R Rᵀ = S` from the eigen-decomposition of a
/// symmetric PSD matrix, clipping small negative eigenvalues to zero.
pub fn psd_sqrt(s: &DMatrix<f64>) -> Result<DMatrix<f64>> {
    if s.iter().any(|v| !v.is_finite()) {
        return Err(Error::NonFinite("covariance"));
    }
    if s.iter().all(|&v| v == 0.0) {
        return Ok(s.clone());
    }
    let sym = (s + s.transpose()) * 0.5;
    let eig = sym.symmetric_eigen();
    let scale = eig.eigenvalues.amax().max(1.0);
    let mut q = eig.eigenvectors;
    for (j, &lam) in eig.eigenvalues.iter().enumerate() {
        if lam < NEG_EIG_HARD * scale {
            return Err(Error::NotPositiveSemidefinite(lam));
        }
        let r = lam.max(0.0).sqrt();
        q.column_mut(j).scale_mut(r);
    }
    Ok(q)
}

/// Draws `x_t ~ N(e^{A(t-s)} x_s + m, S)` given the jumps on `(s, t]`.
pub fn transition_sample<R: Rng + ?Sized>(
    ssm: &LinearSsm,
    x_s: &DVector<f64>,
    seq: &JumpSequence,
    s: f64,
    t: f64,
    rng: &mut R,
) -> Result<DVector<f64>> {
    if x_s.len() != ssm.dim() {
        return Err(Error::Dimension(format!("state has length {}, model dimension is {}", x_s.len(), ssm.dim())));
    }
    let mom = cond_moments(ssm, seq, s, t)?;
    let mean = ssm.transition(t - s)? * x_s + mom.m;
    if seq.is_empty() {
        return Ok(mean);
    }
    let root = psd_sqrt(&mom.s)?;
    let xi = DVector::from_fn(ssm.dim(), |_, _| StandardNormal.sample(rng));
    Ok(mean + root * xi)
}

/// Output of [`simulate_path`].
#[derive(Debug, Clone, PartialEq)]
pub struct SimulatedPath {
    pub times: Vec<f64>,
    pub states: Vec<DVector<f64>>,
    pub jumps: Vec<JumpSequence>,
    pub observations: Vec<f64>,
}

/// Forward simulation from `x0` at time 0 through `obs_times`, observing
/// `y = H x + σ_ε ε` at each time.
pub fn simulate_path<R: Rng + ?Sized>(
    ssm: &LinearSsm,
    x0: &DVector<f64>,
    obs_times: &[f64],
    budget: TruncationBudget,
    z1: f64,
    rng: &mut R,
) -> Result<SimulatedPath> {
    let mut prev = 0.0;
    for (i, &t) in obs_times.iter().enumerate() {
        if !t.is_finite() || t <= prev {
            return Err(Error::Unsorted(i));
        }
        prev = t;
    }
    let n = obs_times.len();
    let mut out = SimulatedPath {
        times: obs_times.to_vec(),
        states: Vec::with_capacity(n),
        jumps: Vec::with_capacity(n),
        observations: Vec::with_capacity(n),
    };
    let mut x = x0.clone();
    let mut s = 0.0;
    for &t in obs_times {
        let iv = Interval::new(s, t)?;
        let seq = sample_gig(&ssm.gh().gig, z1, iv, budget, rng)?;
        x = transition_sample(ssm, &x, &seq, s, t, rng)?;
        let eps: f64 = StandardNormal.sample(rng);
        out.observations.push(ssm.h().dot(&x.transpose()) + ssm.sigma_eps() * eps);
        out.states.push(x.clone());
        out.jumps.push(seq);
        s = t;
    }
    Ok(out)
}
