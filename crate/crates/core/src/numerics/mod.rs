//! Special functions and reference densities.
//!
//! All functions are pure and thread-safe.

mod bessel;
mod density;
mod gamma;
mod incgamma;

pub use bessel::{bessel_jy, bessel_k, hankel1_abs_sq, hankel1_abs_sq_scaled, ln_bessel_k};
pub use density::{gh_pdf, gig_pdf, ln_gh_pdf, ln_gig_pdf, GhClassic};
pub use gamma::{gamma, ln_gamma};
pub use incgamma::{
    lower_incomplete_gamma, lower_incomplete_gamma_scaled, regularized_lower, regularized_upper,
    upper_incomplete_gamma, upper_incomplete_gamma_exp_scaled,
};

/// Bessel / Hankel order `ν`, the absolute value of the GIG `λ` at
/// every sampler call site.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct RealOrder(f64);

impl RealOrder {
    pub fn new(nu: f64) -> crate::Result<Self> {
        if !nu.is_finite() || nu < 0.0 {
            return Err(crate::error::domain("RealOrder", format!("order {nu} must be finite and >= 0")));
        }
        Ok(Self(nu))
    }

    pub fn get(self) -> f64 {
        self.0
    }
}
