//! Sequential Metropolis-Hastings filtering with Kalman recursions.
//!
//! On each observation interval the latent subordinator jumps are sampled
//! by an independence MH chain whose proposal is the GIG prior. Given a jump
//! hypothesis the model is linear Gaussian, so each chain state carries its
//! own Kalman posterior and marginal-conditional likelihood. The chain's
//! posteriors form an equal-weight Gaussian mixture that is collapsed by
//! moment matching before moving on to the next interval.

mod collapse;
mod kalman;
mod mh;
mod run;
mod state;

pub use collapse::collapse;
pub use kalman::{kalman_correct, kalman_predict};
pub use mh::{mh_step, ChainState, GigPrior, JumpProposal, MhOutcome};
pub use run::{filter_step, filter_step_with_proposal, run_filter, FilterConfig, FilterStepResult, Z1Choice};
pub use state::GaussianState;
