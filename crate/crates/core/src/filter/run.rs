use rand::Rng;

use super::collapse::collapse;
use super::mh::{mh_step, ChainState, GigPrior, JumpProposal};
use super::state::GaussianState;
use crate::error::{Error, Result};
use crate::jumps::{z1_upper_bound, GigParams, Interval, JumpSequence, TruncationBudget};
use crate::rng::stream_rng;
use crate::ssm::LinearSsm;

/// Split point `z₁` of the GIG sampler.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub enum Z1Choice {
    /// The largest admissible value for the model's `λ`.
    #[default]
    Auto,
    Fixed(f64),
}

impl Z1Choice {
    pub fn resolve(self, params: &GigParams) -> Result<f64> {
        let bound = z1_upper_bound(params.lambda())?;
        match self {
            Z1Choice::Auto => Ok(bound),
            Z1Choice::Fixed(z) if z > 0.0 && z <= bound => Ok(z),
            Z1Choice::Fixed(z) => Err(Error::InvalidParameter(format!("z1 = {z} must lie in (0, {bound}]"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct FilterConfig {
    /// Chain length `N`, counting the initial prior draw.
    pub n_iter: usize,
    /// Leading chain states dropped before collapsing.
    pub burn_in: usize,
    pub z1: Z1Choice,
    pub budget: TruncationBudget,
    pub seed: u64,
    /// Initial filtering density; `None` means `N(0, 100 I)` at time 0.
    pub initial: Option<GaussianState>,
    /// Keep every chain state's jump sequence in the results.
    pub store_chain: bool,
}

impl Default for FilterConfig {
    fn default() -> Self {
        Self {
            n_iter: 100,
            burn_in: 0,
            z1: Z1Choice::Auto,
            budget: TruncationBudget::default(),
            seed: 0,
            initial: None,
            store_chain: false,
        }
    }
}

impl FilterConfig {
    pub const DEFAULT_INITIAL_VARIANCE: f64 = 100.0;

    pub fn validate(&self) -> Result<()> {
        if self.n_iter == 0 {
            return Err(Error::InvalidParameter("n_iter must be positive".into()));
        }
        if self.burn_in >= self.n_iter {
            return Err(Error::InvalidParameter(format!(
                "burn_in ({}) must be smaller than n_iter ({})",
                self.burn_in, self.n_iter
            )));
        }
        Ok(())
    }

    fn proposal(&self, ssm: &LinearSsm) -> Result<GigPrior> {
        let params = ssm.gh().gig;
        Ok(GigPrior { params, z1: self.z1.resolve(&params)?, budget: self.budget })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct FilterStepResult {
    pub collapsed: GaussianState,
    /// Accepted proposals over MH steps; 1 for a single-state chain.
    pub acceptance_rate: f64,
    pub chain_jumps: Option<Vec<JumpSequence>>,
    /// Log of the chain average of the marginal-conditional likelihoods.
    pub log_marginal: f64,
}

fn log_mean_exp(xs: &[f64]) -> f64 {
    let m = xs.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if m == f64::NEG_INFINITY || !m.is_finite() {
        return m;
    }
    let s: f64 = xs.iter().map(|&x| (x - m).exp()).sum();
    m + (s / xs.len() as f64).ln()
}

/// One filtering step from `prior` to the observation `y` at time `t`.
pub fn filter_step<R: Rng + ?Sized>(
    prior: &GaussianState,
    ssm: &LinearSsm,
    y: f64,
    t: f64,
    config: &FilterConfig,
    rng: &mut R,
) -> Result<FilterStepResult> {
    let proposal = config.proposal(ssm)?;
    filter_step_with_proposal(prior, ssm, y, t, config, &proposal, rng)
}

/// [`filter_step`] with an arbitrary jump proposal in place of the GIG prior.
pub fn filter_step_with_proposal<P: JumpProposal, R: Rng + ?Sized>(
    prior: &GaussianState,
    ssm: &LinearSsm,
    y: f64,
    t: f64,
    config: &FilterConfig,
    proposal: &P,
    rng: &mut R,
) -> Result<FilterStepResult> {
    config.validate()?;
    let interval = Interval::new(prior.time, t)?;
    let first = proposal.propose(interval, rng)?;
    let mut current = ChainState::evaluate(prior, ssm, first, y)?;

    let keep = config.n_iter - config.burn_in;
    let mut posteriors = Vec::with_capacity(keep);
    let mut log_liks = Vec::with_capacity(keep);
    let mut jumps = config.store_chain.then(|| Vec::with_capacity(config.n_iter));
    let mut accepted = 0usize;

    for i in 0..config.n_iter {
        if i > 0 {
            let out = mh_step(prior, ssm, y, current, proposal, rng)?;
            accepted += out.accepted as usize;
            current = out.state;
        }
        if let Some(j) = jumps.as_mut() {
            j.push(current.jumps.clone());
        }
        if i >= config.burn_in {
            posteriors.push(current.posterior.clone());
            log_liks.push(current.log_lik);
        }
    }

    let acceptance_rate = if config.n_iter > 1 { accepted as f64 / (config.n_iter - 1) as f64 } else { 1.0 };
    Ok(FilterStepResult {
        collapsed: collapse(&posteriors)?,
        acceptance_rate,
        chain_jumps: jumps,
        log_marginal: log_mean_exp(&log_liks),
    })
}

/// Filters `(time, value)` observations in order. Step `k` uses the random
/// stream `(config.seed, k)`.
pub fn run_filter(
    ssm: &LinearSsm,
    observations: &[(f64, f64)],
    config: &FilterConfig,
) -> Result<Vec<FilterStepResult>> {
    config.validate()?;
    for (i, w) in observations.windows(2).enumerate() {
        if !(w[1].0 > w[0].0) {
            return Err(Error::Unsorted(i + 1));
        }
    }
    let Some(&(t0, _)) = observations.first() else {
        return Ok(Vec::new());
    };
    let mut state = match &config.initial {
        Some(g) => g.clone(),
        None => GaussianState::diffuse(ssm.dim(), FilterConfig::DEFAULT_INITIAL_VARIANCE, t0.min(0.0)),
    };
    if state.dim() != ssm.dim() {
        return Err(Error::Dimension(format!("initial state has dimension {}, model has {}", state.dim(), ssm.dim())));
    }
    let proposal = config.proposal(ssm)?;
    let mut out = Vec::with_capacity(observations.len());
    for (k, &(t, y)) in observations.iter().enumerate() {
        let mut rng = stream_rng(config.seed, k as u64);
        let res = filter_step_with_proposal(&state, ssm, y, t, config, &proposal, &mut rng)?;
        state = res.collapsed.clone();
        out.push(res);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::filter::{kalman_correct, kalman_predict};
    use crate::jumps::{sample_gig, GhParams};

    fn model() -> LinearSsm {
        let gig = GigParams::new(-0.8, 1.0, 0.5).unwrap();
        LinearSsm::langevin(-0.5, 0.1, GhParams::new(gig, 0.0, 1.0, 0.0).unwrap()).unwrap()
    }

    fn config(n_iter: usize) -> FilterConfig {
        FilterConfig { n_iter, budget: TruncationBudget::new(300.0).unwrap(), seed: 11, ..FilterConfig::default() }
    }

    #[test]
    fn log_mean_exp_values() {
        assert!((log_mean_exp(&[0.0, 0.0]) - 0.0).abs() < 1e-15);
        assert!((log_mean_exp(&[-1000.0, -1000.0 + 2f64.ln()]) - (-1000.0 + 1.5f64.ln())).abs() < 1e-12);
        assert_eq!(log_mean_exp(&[f64::NEG_INFINITY]), f64::NEG_INFINITY);
    }

    #[test]
    fn config_validation() {
        assert!(FilterConfig { n_iter: 0, ..config(1) }.validate().is_err());
        assert!(FilterConfig { burn_in: 5, ..config(5) }.validate().is_err());
        let p = GigParams::new(-0.8, 1.0, 0.5).unwrap();
        assert!(Z1Choice::Fixed(10.0).resolve(&p).is_err());
        assert_eq!(Z1Choice::Fixed(0.2).resolve(&p).unwrap(), 0.2);
    }

    #[test]
    fn single_state_chain_is_one_kalman_pass() {
        let ssm = model();
        let cfg = config(1);
        let prior = GaussianState::diffuse(2, 4.0, 0.0);
        let mut rng = stream_rng(9, 3);
        let r = filter_step(&prior, &ssm, 0.7, 1.5, &cfg, &mut rng).unwrap();

        let mut rng = stream_rng(9, 3);
        let z1 = z1_upper_bound(-0.8).unwrap();
        let seq = sample_gig(&ssm.gh().gig, z1, Interval::new(0.0, 1.5).unwrap(), cfg.budget, &mut rng).unwrap();
        let pred = kalman_predict(&prior, &ssm, &seq, 1.5).unwrap();
        let (post, ll) = kalman_correct(&pred, &ssm, 0.7).unwrap();
        assert_eq!(r.collapsed, post);
        assert_eq!(r.log_marginal, ll);
        assert_eq!(r.acceptance_rate, 1.0);
    }

    #[test]
    fn deterministic_and_stores_chain() {
        let ssm = model();
        let cfg = FilterConfig { store_chain: true, ..config(8) };
        let obs = [(0.5, 0.1), (1.0, 0.3), (1.7, -0.2)];
        let a = run_filter(&ssm, &obs, &cfg).unwrap();
        let b = run_filter(&ssm, &obs, &cfg).unwrap();
        assert_eq!(a, b);
        assert_eq!(a[0].chain_jumps.as_ref().unwrap().len(), 8);
        for r in &a {
            assert!((0.0..=1.0).contains(&r.acceptance_rate));
            assert!(r.log_marginal.is_finite());
        }
    }

    #[test]
    fn empty_single_and_unsorted() {
        let ssm = model();
        let cfg = config(4);
        assert!(run_filter(&ssm, &[], &cfg).unwrap().is_empty());
        let one = run_filter(&ssm, &[(1.0, 0.2)], &cfg).unwrap();
        let prior = GaussianState::diffuse(2, 100.0, 0.0);
        let step = filter_step(&prior, &ssm, 0.2, 1.0, &cfg, &mut stream_rng(11, 0)).unwrap();
        assert_eq!(one[0], step);
        assert!(matches!(run_filter(&ssm, &[(1.0, 0.0), (1.0, 0.0)], &cfg), Err(Error::Unsorted(1))));
    }

    #[test]
    fn observation_at_prior_time_is_correction_only() {
        let ssm = model();
        let r = run_filter(&ssm, &[(0.0, 1.2)], &config(3)).unwrap();
        assert_eq!(r[0].acceptance_rate, 1.0);
        assert!((r[0].collapsed.mu[0] - 1.2 * 100.0 / 100.01).abs() < 1e-12);
    }
}
