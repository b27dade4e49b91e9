//! Shot-noise jump generators.
//!
//! Jumps of the GIG subordinator are produced by thinning three tractable
//! dominating point processes (two gamma processes and one tempered stable
//! process) and marking each surviving point with an auxiliary variable
//! `z`. GH jumps are then obtained as a normal variance-mean mixture of the
//! subordinator jumps.
//!
//! Series are truncated at a fixed Poisson epoch ceiling, see
//! [`TruncationBudget`]; no compensation for the discarded small jumps is
//! applied.

mod gig;
mod marking;
mod params;
mod sequence;
mod shot_noise;

pub use gig::{attach_gh_jumps, sample_gig, sample_gig_logged, sample_gig_n1, sample_gig_n2, z1_upper_bound};
pub use marking::{truncated_gamma_above, truncated_gamma_below};
pub use params::{GhParams, GigParams, TruncationBudget};
pub use sequence::{shot_noise_path, Interval, JumpRecord, JumpSequence};
pub use shot_noise::{
    poisson_epochs, sample_gamma_process, sample_gamma_process_logged, sample_tempered_stable,
    sample_tempered_stable_logged, AcceptanceLog, Stage,
};
