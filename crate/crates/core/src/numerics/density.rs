//! Reference densities of the generalised inverse Gaussian (GIG) and
//! generalised hyperbolic (GH) laws, evaluated in log space.

use std::f64::consts::PI;

use super::bessel::ln_bessel_k;
use crate::error::{domain, Result};

/// `ln` of the GIG(λ, δ, γ) density at `x`.
pub fn ln_gig_pdf(x: f64, lambda: f64, delta: f64, gamma: f64) -> Result<f64> {
    if !(x > 0.0) || !(delta > 0.0) || !(gamma > 0.0) || !lambda.is_finite() {
        return Err(domain(
            "gig_pdf",
            format!("need x, delta, gamma > 0 (x={x}, delta={delta}, gamma={gamma}, lambda={lambda})"),
        ));
    }
    let norm = lambda * (gamma / delta).ln() - 2f64.ln() - ln_bessel_k(lambda, delta * gamma)?;
    Ok(norm + (lambda - 1.0) * x.ln() - 0.5 * (delta * delta / x + gamma * gamma * x))
}

/// GIG(λ, δ, γ) density
/// `(γ/δ)^λ / (2 K_λ(δγ)) x^{λ-1} exp(-(δ²/x + γ²x)/2)`.
pub fn gig_pdf(x: f64, lambda: f64, delta: f64, gamma: f64) -> Result<f64> {
    Ok(ln_gig_pdf(x, lambda, delta, gamma)?.exp())
}

/// Five-parameter GH law in its classical `(λ, α, β, δ, μ)` form.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GhClassic {
    pub lambda: f64,
    pub alpha: f64,
    pub beta: f64,
    pub delta: f64,
    pub mu: f64,
}

impl GhClassic {
    pub fn new(lambda: f64, alpha: f64, beta: f64, delta: f64, mu: f64) -> Result<Self> {
        let ok = lambda.is_finite()
            && alpha.is_finite()
            && alpha > 0.0
            && beta.abs() < alpha
            && delta > 0.0
            && delta.is_finite()
            && mu.is_finite();
        if !ok {
            return Err(domain(
                "gh_pdf",
                format!(
                    "need alpha > |beta| >= 0, delta > 0 (lambda={lambda}, alpha={alpha}, beta={beta}, delta={delta}, mu={mu})"
                ),
            ));
        }
        Ok(Self { lambda, alpha, beta, delta, mu })
    }

    /// `√(α² - β²)`, the γ of the GIG mixing law.
    pub fn gamma(&self) -> f64 {
        ((self.alpha - self.beta) * (self.alpha + self.beta)).sqrt()
    }
}

/// `ln` of the GH density.
pub fn ln_gh_pdf(x: f64, p: &GhClassic) -> Result<f64> {
    if !x.is_finite() {
        return Err(domain("gh_pdf", format!("argument {x} is not finite")));
    }
    let GhClassic { lambda, alpha, beta, delta, mu } = *p;
    let g = p.gamma();
    let ln_a = lambda * g.ln()
        - 0.5 * (2.0 * PI).ln()
        - (lambda - 0.5) * alpha.ln()
        - lambda * delta.ln()
        - ln_bessel_k(lambda, delta * g)?;
    let dx = x - mu;
    let r = (delta * delta + dx * dx).sqrt();
    Ok(ln_a + (lambda - 0.5) * r.ln() + ln_bessel_k(lambda - 0.5, alpha * r)? + beta * dx)
}

/// GH density
/// `a(λ,α,β,δ) (δ² + (x-μ)²)^{(λ-½)/2} K_{λ-½}(α√(δ² + (x-μ)²)) e^{β(x-μ)}`.
pub fn gh_pdf(x: f64, p: &GhClassic) -> Result<f64> {
    Ok(ln_gh_pdf(x, p)?.exp())
}
