use nalgebra::{DMatrix, DVector};

use super::state::GaussianState;
use crate::error::{Error, Result};

/// Moment-matched single Gaussian for an equal-weight mixture:
/// `μ = mean μ_j`, `C = mean [C_j + (μ_j - μ)(μ_j - μ)ᵀ]`.
pub fn collapse(chain: &[GaussianState]) -> Result<GaussianState> {
    let first = chain.first().ok_or(Error::EmptyChain)?;
    let d = first.dim();
    if chain.iter().any(|g| g.dim() != d) {
        return Err(Error::Dimension("chain states differ in dimension".into()));
    }
    let n = chain.len() as f64;
    let mut mu = DVector::zeros(d);
    for g in chain {
        mu += &g.mu;
    }
    mu /= n;
    let mut cov = DMatrix::zeros(d, d);
    for g in chain {
        let dm = &g.mu - &mu;
        cov += &g.cov;
        cov.ger(1.0, &dm, &dm, 1.0);
    }
    cov /= n;
    let cov = (&cov + cov.transpose()) * 0.5;
    Ok(GaussianState { mu, cov, time: first.time })
}
