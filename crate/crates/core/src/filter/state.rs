use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};

/// Gaussian filtering density `N(μ, C)` at a given time.
#[derive(Debug, Clone, PartialEq)]
pub struct GaussianState {
    pub mu: DVector<f64>,
    pub cov: DMatrix<f64>,
    pub time: f64,
}

impl GaussianState {
    pub fn new(mu: DVector<f64>, cov: DMatrix<f64>, time: f64) -> Result<Self> {
        if !cov.is_square() || cov.nrows() != mu.len() {
            return Err(Error::Dimension(format!(
                "mean has length {}, covariance is {}x{}",
                mu.len(),
                cov.nrows(),
                cov.ncols()
            )));
        }
        if mu.iter().chain(cov.iter()).any(|v| !v.is_finite()) || !time.is_finite() {
            return Err(Error::NonFinite("Gaussian state"));
        }
        Ok(Self { mu, cov, time })
    }

    /// Diffuse prior `N(0, var I)`.
    pub fn diffuse(dim: usize, var: f64, time: f64) -> Self {
        Self { mu: DVector::zeros(dim), cov: DMatrix::identity(dim, dim) * var, time }
    }

    pub fn dim(&self) -> usize {
        self.mu.len()
    }

    /// Smallest eigenvalue of the covariance.
    pub fn min_eigenvalue(&self) -> f64 {
        let sym = (&self.cov + self.cov.transpose()) * 0.5;
        sym.symmetric_eigenvalues().min()
    }
}
