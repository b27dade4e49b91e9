//! Shared fixtures for the benchmarks.

use levy_ssm::{
    sample_gig, stream_rng, z1_upper_bound, GhParams, GigParams, Interval, JumpSequence, LinearSsm, Result,
    TruncationBudget,
};

/// Langevin model with the synthetic-experiment parameters.
pub fn langevin_model() -> Result<LinearSsm> {
    let gig = GigParams::new(-0.8, 1.0, 0.01)?;
    LinearSsm::langevin(-0.5, 0.1, GhParams::new(gig, 0.0, 1.0, 0.0)?)
}

/// GIG jumps on `(0, len]` for the model's subordinator.
pub fn jump_sequence(ssm: &LinearSsm, len: f64, gamma_max: f64, seed: u64) -> Result<JumpSequence> {
    let gig = ssm.gh().gig;
    sample_gig(
        &gig,
        z1_upper_bound(gig.lambda())?,
        Interval::new(0.0, len)?,
        TruncationBudget::new(gamma_max)?,
        &mut stream_rng(seed, 0),
    )
}
