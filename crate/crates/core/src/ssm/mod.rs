//! Linear vector SDEs `dx = A x dt + L dW` driven by GH noise.
//!
//! Given the subordinator jumps on `(s, t]`, the state transition is
//! Gaussian:
//!
//! ```text
//! x_t | x_s, {(V_i, Z_i)} ~ N(e^{A(t-s)} x_s + m, S)
//! m = Σ f_t(V_i) μ_W Z_i,   S = Σ f_t(V_i) f_t(V_i)ᵀ σ_W² Z_i,
//! f_t(u) = e^{A(t-u)} L.
//! ```

mod expm;
mod langevin;
mod model;
mod moments;
mod simulate;

pub use expm::expm;
pub use langevin::{langevin_expm, langevin_ft, langevin_ftft};
pub use model::{Dynamics, LinearSsm};
pub use moments::{cond_moments, CondGaussMoments};
pub use simulate::{psd_sqrt, simulate_path, transition_sample, SimulatedPath};
