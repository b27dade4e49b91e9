use crate::error::{Error, Result};
use crate::numerics::GhClassic;

/// Parameters `(λ, δ, γ)` of the GIG subordinator.
///
/// Only the regime `λ ≤ -1/2`, `δ > 0`, `γ > 0` is supported by the
/// jump samplers, so the constructor rejects anything else.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GigParams {
    lambda: f64,
    delta: f64,
    gamma: f64,
}

impl GigParams {
    pub fn new(lambda: f64, delta: f64, gamma: f64) -> Result<Self> {
        if !(lambda <= -0.5) || !lambda.is_finite() {
            return Err(Error::InvalidParameter(format!("GIG lambda must satisfy lambda <= -0.5, got {lambda}")));
        }
        if !(delta > 0.0) || !delta.is_finite() {
            return Err(Error::InvalidParameter(format!("GIG delta must be > 0, got {delta}")));
        }
        if !(gamma > 0.0) || !gamma.is_finite() {
            return Err(Error::InvalidParameter(format!("GIG gamma must be > 0, got {gamma}")));
        }
        Ok(Self { lambda, delta, gamma })
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    pub fn delta(&self) -> f64 {
        self.delta
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    /// `|λ|`, the Bessel order used throughout the samplers.
    pub fn abs_lambda(&self) -> f64 {
        self.lambda.abs()
    }
}

/// GH driving noise: jumps `W = μ_W Z + σ_W √Z U` over GIG jumps `Z`,
/// plus an optional deterministic drift `μ` per unit time.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GhParams {
    pub gig: GigParams,
    pub mu_w: f64,
    pub sigma_w: f64,
    pub mu: f64,
}

impl GhParams {
    pub fn new(gig: GigParams, mu_w: f64, sigma_w: f64, mu: f64) -> Result<Self> {
        if !(sigma_w > 0.0) || !sigma_w.is_finite() {
            return Err(Error::InvalidParameter(format!("sigma_W must be > 0, got {sigma_w}")));
        }
        if !mu_w.is_finite() || !mu.is_finite() {
            return Err(Error::InvalidParameter("mu_W and mu must be finite".into()));
        }
        Ok(Self { gig, mu_w, sigma_w, mu })
    }

    /// Classical `(λ, α, β, δ, μ)` parameters of the unit-time marginal.
    ///
    /// With `u = σ_W² Z` the mixture reads `W | u ~ N(β u, u)` and
    /// `u ~ GIG(λ, δσ_W, γ/σ_W)`, so `β = μ_W/σ_W²`, `δ_GH = δσ_W` and
    /// `α = √(β² + γ²/σ_W²)`.
    pub fn classic(&self) -> Result<GhClassic> {
        let s2 = self.sigma_w * self.sigma_w;
        let beta = self.mu_w / s2;
        let g = self.gig.gamma / self.sigma_w;
        let alpha = beta.hypot(g);
        GhClassic::new(self.gig.lambda, alpha, beta, self.gig.delta * self.sigma_w, self.mu)
    }
}

/// Fixed truncation of every shot-noise series: unit-rate Poisson epochs
/// are generated up to `gamma_max` per unit of time.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TruncationBudget {
    gamma_max: f64,
}

impl TruncationBudget {
    pub const DEFAULT_GAMMA_MAX: f64 = 2000.0;

    pub fn new(gamma_max: f64) -> Result<Self> {
        if !(gamma_max > 0.0) || !gamma_max.is_finite() {
            return Err(Error::InvalidParameter(format!("truncation gamma_max must be > 0, got {gamma_max}")));
        }
        Ok(Self { gamma_max })
    }

    pub fn gamma_max(&self) -> f64 {
        self.gamma_max
    }

    /// Epoch ceiling for an interval of length `len`.
    pub fn epoch_ceiling(&self, len: f64) -> f64 {
        self.gamma_max * len
    }
}

impl Default for TruncationBudget {
    fn default() -> Self {
        Self { gamma_max: Self::DEFAULT_GAMMA_MAX }
    }
}
