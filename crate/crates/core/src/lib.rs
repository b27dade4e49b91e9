//! Generalised hyperbolic (GH) Lévy state-space models.
//!
//! The crate covers three layers:
//!
//! * [`numerics`]: real-order Bessel functions, incomplete gamma functions
//!   and the GIG / GH densities used as reference laws.
//! * [`jumps`]: shot-noise generators for tempered stable and gamma
//!   processes, and the thinning/marking construction of GIG subordinator
//!   jumps from which GH jumps are built as a normal variance-mean mixture.
//! * [`ssm`] and [`filter`]: linear vector SDEs driven by GH noise, their
//!   conditionally Gaussian transition law given the subordinator jumps, and
//!   a sequential Metropolis-Hastings filter that runs Kalman recursions per
//!   jump hypothesis and collapses the resulting Gaussian mixture.
//!
//! Every sampler takes an explicit random stream; see [`rng`].

pub mod error;
pub mod filter;
pub mod jumps;
pub mod numerics;
pub mod quad;
pub mod rng;
pub mod ssm;
pub mod stats;
pub mod validation;

pub use error::{Error, Result};
pub use filter::{
    collapse, filter_step, kalman_correct, kalman_predict, mh_step, run_filter, FilterConfig, FilterStepResult,
    GaussianState, GigPrior, JumpProposal, MhOutcome, Z1Choice,
};
pub use jumps::{
    attach_gh_jumps, sample_gig, shot_noise_path, z1_upper_bound, AcceptanceLog, GhParams, GigParams, Interval,
    JumpRecord, JumpSequence, TruncationBudget,
};
pub use rng::{stream_rng, SimRng, RNG_NAME};
pub use ssm::{cond_moments, simulate_path, transition_sample, CondGaussMoments, LinearSsm};
