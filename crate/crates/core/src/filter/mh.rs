use rand::Rng;

use super::kalman::{kalman_correct, kalman_predict};
use super::state::GaussianState;
use crate::error::Result;
use crate::jumps::{sample_gig, GigParams, Interval, JumpSequence, TruncationBudget};
use crate::ssm::LinearSsm;

/// Source of independent jump-sequence proposals for one interval.
pub trait JumpProposal {
    fn propose<R: Rng + ?Sized>(&self, interval: Interval, rng: &mut R) -> Result<JumpSequence>;
}

/// Proposal drawing jumps from the GIG subordinator prior.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GigPrior {
    pub params: GigParams,
    pub z1: f64,
    pub budget: TruncationBudget,
}

impl JumpProposal for GigPrior {
    fn propose<R: Rng + ?Sized>(&self, interval: Interval, rng: &mut R) -> Result<JumpSequence> {
        sample_gig(&self.params, self.z1, interval, self.budget, rng)
    }
}

/// One chain state: a jump hypothesis with its Kalman posterior and
/// marginal-conditional log-likelihood.
#[derive(Debug, Clone, PartialEq)]
pub struct ChainState {
    pub jumps: JumpSequence,
    pub posterior: GaussianState,
    pub log_lik: f64,
}

impl ChainState {
    /// Runs predict and correct for `jumps`.
    pub fn evaluate(prior: &GaussianState, ssm: &LinearSsm, jumps: JumpSequence, y: f64) -> Result<Self> {
        let t = jumps.interval().end;
        let pred = kalman_predict(prior, ssm, &jumps, t)?;
        let (posterior, log_lik) = kalman_correct(&pred, ssm, y)?;
        Ok(Self { jumps, posterior, log_lik })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct MhOutcome {
    pub state: ChainState,
    pub accepted: bool,
    /// `log min(1, p'/p)`.
    pub log_alpha: f64,
}

/// One independence Metropolis-Hastings step.
///
/// A fresh sequence is drawn from `proposal` on `current.jumps`' interval
/// and accepted with probability `min(1, p(y | new) / p(y | current))`.
/// The current state's cached likelihood is reused.
pub fn mh_step<P: JumpProposal, R: Rng + ?Sized>(
    prior: &GaussianState,
    ssm: &LinearSsm,
    y: f64,
    current: ChainState,
    proposal: &P,
    rng: &mut R,
) -> Result<MhOutcome> {
    let jumps = proposal.propose(current.jumps.interval(), rng)?;
    let cand = ChainState::evaluate(prior, ssm, jumps, y)?;
    let log_alpha = log_acceptance(cand.log_lik, current.log_lik);
    let u: f64 = rng.random();
    let accepted = log_alpha >= 0.0 || u < log_alpha.exp();
    Ok(if accepted {
        MhOutcome { state: cand, accepted, log_alpha }
    } else {
        MhOutcome { state: current, accepted, log_alpha }
    })
}

fn log_acceptance(proposed: f64, current: f64) -> f64 {
    let d = proposed - current;
    if d.is_nan() {
        // Both -inf: no information either way.
        if proposed == current {
            0.0
        } else {
            f64::NEG_INFINITY
        }
    } else {
        d.min(0.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::jumps::{GhParams, JumpRecord};
    use crate::rng::stream_rng;

    struct Fixed(Vec<(f64, f64)>);

    impl JumpProposal for Fixed {
        fn propose<R: Rng + ?Sized>(&self, iv: Interval, _rng: &mut R) -> Result<JumpSequence> {
            let recs = self.0.iter().map(|&(time, z)| JumpRecord { time, z, w: None }).collect();
            JumpSequence::new(iv, recs)
        }
    }

    fn model(sigma_eps: f64) -> LinearSsm {
        let gig = GigParams::new(-0.8, 1.0, 0.5).unwrap();
        LinearSsm::langevin(-0.5, sigma_eps, GhParams::new(gig, 0.0, 1.0, 0.0).unwrap()).unwrap()
    }

    #[test]
    fn acceptance_probability_in_unit_interval() {
        assert_eq!(log_acceptance(-3.0, -3.0), 0.0);
        assert_eq!(log_acceptance(1.0, -3.0), 0.0);
        assert_eq!(log_acceptance(-5.0, -3.0), -2.0);
        assert_eq!(log_acceptance(f64::NEG_INFINITY, -3.0), f64::NEG_INFINITY);
        assert_eq!(log_acceptance(-1e308, 0.0), -1e308);
    }

    #[test]
    fn equal_likelihood_always_accepts() {
        let ssm = model(0.3);
        let prior = GaussianState::diffuse(2, 1.0, 0.0);
        let iv = Interval::new(0.0, 1.0).unwrap();
        let prop = Fixed(vec![(0.5, 0.2)]);
        let mut rng = stream_rng(0, 0);
        let mut cur = ChainState::evaluate(&prior, &ssm, prop.propose(iv, &mut rng).unwrap(), 0.4).unwrap();
        for _ in 0..200 {
            let out = mh_step(&prior, &ssm, 0.4, cur, &prop, &mut rng).unwrap();
            assert!(out.accepted);
            cur = out.state;
        }
    }

    #[test]
    fn hopeless_proposal_is_rejected() {
        let ssm = model(0.3);
        let prior = GaussianState::diffuse(2, 1.0, 0.0);
        let iv = Interval::new(0.0, 1.0).unwrap();
        let mut rng = stream_rng(0, 0);
        let cur = ChainState::evaluate(&prior, &ssm, JumpSequence::empty(iv), 0.4).unwrap();
        let mut bad = cur.clone();
        bad.log_lik = -1e308;
        let out = mh_step(&prior, &ssm, 0.4, bad.clone(), &Fixed(vec![]), &mut rng).unwrap();
        assert!(out.accepted);
        // Reverse roles: current is good, proposal evaluates to the same
        // finite value, so the stub cannot produce -1e308; check the rule
        // directly instead.
        assert!(log_acceptance(-1e308, cur.log_lik).exp() == 0.0);
    }

    #[test]
    fn flat_likelihood_accepts_nearly_always() {
        let ssm = model(1e6);
        let prior = GaussianState::diffuse(2, 1.0, 0.0);
        let iv = Interval::new(0.0, 1.0).unwrap();
        let prop = GigPrior {
            params: GigParams::new(-0.8, 1.0, 0.5).unwrap(),
            z1: 0.4,
            budget: TruncationBudget::new(200.0).unwrap(),
        };
        let mut rng = stream_rng(4, 0);
        let mut cur = ChainState::evaluate(&prior, &ssm, prop.propose(iv, &mut rng).unwrap(), 0.0).unwrap();
        let mut acc = 0;
        for _ in 0..1000 {
            let out = mh_step(&prior, &ssm, 0.0, cur, &prop, &mut rng).unwrap();
            acc += out.accepted as usize;
            cur = out.state;
        }
        assert!(acc >= 990, "accepted {acc}");
    }
}
