//! Closed forms for the Langevin model `A = [[0, 1], [0, θ]]`, `L = (0, 1)ᵀ`.

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};

fn check(theta: f64, dt: f64) -> Result<()> {
    if !(theta < 0.0) || !theta.is_finite() {
        return Err(Error::InvalidParameter(format!("Langevin theta must be < 0, got {theta}")));
    }
    if !(dt >= 0.0) || !dt.is_finite() {
        return Err(Error::InvalidParameter(format!("time step must be >= 0, got {dt}")));
    }
    Ok(())
}

/// `(e^{θΔ} - 1)/θ` and `e^{θΔ}`.
#[inline]
pub(crate) fn ft_pair(theta: f64, dt: f64) -> (f64, f64) {
    let em1 = (theta * dt).exp_m1();
    (em1 / theta, em1 + 1.0)
}

/// `e^{AΔ} = [[1, (f-1)/θ], [0, f]]` with `f = e^{θΔ}`.
pub fn langevin_expm(theta: f64, dt: f64) -> Result<DMatrix<f64>> {
    check(theta, dt)?;
    let (a, f) = ft_pair(theta, dt);
    Ok(DMatrix::from_row_slice(2, 2, &[1.0, a, 0.0, f]))
}

/// `f_t(u) = e^{A(t-u)} L = ((f-1)/θ, f)ᵀ` with `f = e^{θ(t-u)}`.
pub fn langevin_ft(theta: f64, t: f64, u: f64) -> Result<DVector<f64>> {
    check(theta, t - u)?;
    let (a, f) = ft_pair(theta, t - u);
    Ok(DVector::from_vec(vec![a, f]))
}

/// `f_t(u) f_t(u)ᵀ` in its printed closed form.
pub fn langevin_ftft(theta: f64, t: f64, u: f64) -> Result<DMatrix<f64>> {
    check(theta, t - u)?;
    let (a, f) = ft_pair(theta, t - u);
    let off = f * a;
    Ok(DMatrix::from_row_slice(2, 2, &[a * a, off, off, f * f]))
}

/// `∫₀^Δ e^{Au} L du`.
pub(crate) fn drift_integral(theta: f64, dt: f64) -> (f64, f64) {
    let (a, _) = ft_pair(theta, dt);
    ((a - dt) / theta, a)
}
