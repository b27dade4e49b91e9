use nalgebra::{DMatrix, DVector, RowDVector};

use super::expm::expm;
use super::langevin;
use crate::error::{Error, Result};
use crate::jumps::GhParams;

/// Which closed forms are available for the system matrices.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Dynamics {
    /// `A = [[0, 1], [0, θ]]`, `L = (0, 1)ᵀ`, `θ < 0`.
    Langevin { theta: f64 },
    /// Arbitrary `A`, `L`; exponentials computed numerically.
    General,
}

/// `dx = A x dt + L dW`, `y = H x + σ_ε ε` with GH driving noise `W`.
#[derive(Debug, Clone, PartialEq)]
pub struct LinearSsm {
    dynamics: Dynamics,
    a: DMatrix<f64>,
    l: DVector<f64>,
    h: RowDVector<f64>,
    sigma_eps: f64,
    gh: GhParams,
}

fn check_sigma_eps(sigma_eps: f64) -> Result<()> {
    if !(sigma_eps > 0.0) || !sigma_eps.is_finite() {
        return Err(Error::InvalidParameter(format!("observation noise sigma_eps must be > 0, got {sigma_eps}")));
    }
    Ok(())
}

impl LinearSsm {
    pub fn new(a: DMatrix<f64>, l: DVector<f64>, h: RowDVector<f64>, sigma_eps: f64, gh: GhParams) -> Result<Self> {
        let d = a.nrows();
        if d == 0 || !a.is_square() || l.len() != d || h.len() != d {
            return Err(Error::Dimension(format!(
                "A is {}x{}, L has {} rows, H has {} columns",
                a.nrows(),
                a.ncols(),
                l.len(),
                h.len()
            )));
        }
        if a.iter().chain(l.iter()).chain(h.iter()).any(|v| !v.is_finite()) {
            return Err(Error::NonFinite("system matrices"));
        }
        check_sigma_eps(sigma_eps)?;
        Ok(Self { dynamics: Dynamics::General, a, l, h, sigma_eps, gh })
    }

    /// Langevin model observing position: `H = [1, 0]`.
    pub fn langevin(theta: f64, sigma_eps: f64, gh: GhParams) -> Result<Self> {
        if !(theta < 0.0) || !theta.is_finite() {
            return Err(Error::InvalidParameter(format!("Langevin theta must be < 0, got {theta}")));
        }
        check_sigma_eps(sigma_eps)?;
        Ok(Self {
            dynamics: Dynamics::Langevin { theta },
            a: DMatrix::from_row_slice(2, 2, &[0.0, 1.0, 0.0, theta]),
            l: DVector::from_vec(vec![0.0, 1.0]),
            h: RowDVector::from_vec(vec![1.0, 0.0]),
            sigma_eps,
            gh,
        })
    }

    pub fn dim(&self) -> usize {
        self.a.nrows()
    }

    pub fn dynamics(&self) -> Dynamics {
        self.dynamics
    }

    pub fn a(&self) -> &DMatrix<f64> {
        &self.a
    }

    pub fn l(&self) -> &DVector<f64> {
        &self.l
    }

    pub fn h(&self) -> &RowDVector<f64> {
        &self.h
    }

    pub fn sigma_eps(&self) -> f64 {
        self.sigma_eps
    }

    pub fn gh(&self) -> &GhParams {
        &self.gh
    }

    pub fn with_sigma_eps(mut self, sigma_eps: f64) -> Result<Self> {
        check_sigma_eps(sigma_eps)?;
        self.sigma_eps = sigma_eps;
        Ok(self)
    }

    pub fn with_gh(mut self, gh: GhParams) -> Self {
        self.gh = gh;
        self
    }

    fn check_dt(dt: f64) -> Result<()> {
        if !(dt >= 0.0) || !dt.is_finite() {
            return Err(Error::InvalidParameter(format!("time step must be >= 0, got {dt}")));
        }
        Ok(())
    }

    /// `F = e^{AΔ}`.
    pub fn transition(&self, dt: f64) -> Result<DMatrix<f64>> {
        Self::check_dt(dt)?;
        match self.dynamics {
            Dynamics::Langevin { theta } => langevin::langevin_expm(theta, dt),
            Dynamics::General => expm(&(&self.a * dt)),
        }
    }

    /// `e^{AΔ} L`, the response at lag `Δ` to a unit jump.
    pub fn impulse(&self, dt: f64) -> Result<DVector<f64>> {
        Self::check_dt(dt)?;
        match self.dynamics {
            Dynamics::Langevin { theta } => {
                let (a, f) = langevin::ft_pair(theta, dt);
                Ok(DVector::from_vec(vec![a, f]))
            }
            Dynamics::General => Ok(expm(&(&self.a * dt))? * &self.l),
        }
    }

    /// `∫₀^Δ e^{Au} L du`, the response to a unit constant drift on `W`.
    pub fn drift_response(&self, dt: f64) -> Result<DVector<f64>> {
        Self::check_dt(dt)?;
        match self.dynamics {
            Dynamics::Langevin { theta } => {
                let (p, v) = langevin::drift_integral(theta, dt);
                Ok(DVector::from_vec(vec![p, v]))
            }
            Dynamics::General => {
                // Top-right block of exp([[A, L], [0, 0]] Δ).
                let d = self.dim();
                let mut aug = DMatrix::zeros(d + 1, d + 1);
                aug.view_mut((0, 0), (d, d)).copy_from(&(&self.a * dt));
                aug.view_mut((0, d), (d, 1)).copy_from(&(&self.l * dt));
                let e = expm(&aug)?;
                Ok(e.view((0, d), (d, 1)).column(0).into_owned())
            }
        }
    }
}
