//! Poisson epochs and the two dominating-process generators: tempered
//! stable and gamma processes, both by inversion of the tail mass of a
//! simpler Lévy density followed by thinning.

use rand::Rng;
use rand_distr::{Distribution, Exp1};

use super::params::TruncationBudget;
use crate::error::{Error, Result};

/// Thinning probabilities may exceed one by at most this much before the
/// dominating bound is declared violated.
pub const BOUND_SLACK: f64 = 1e-9;

/// Thinning stages of the GIG construction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Stage {
    TemperedStable,
    Gamma,
    /// Incomplete-gamma thinning of the gamma-process candidates.
    N1Truncation,
    /// Hankel thinning of the marked gamma-process candidates.
    N1Marking,
    /// Incomplete-gamma thinning of the tempered stable candidates.
    N2Truncation,
    /// Hankel thinning of the marked tempered stable candidates.
    N2Marking,
}

impl Stage {
    pub const ALL: [Stage; 6] = [
        Stage::TemperedStable,
        Stage::Gamma,
        Stage::N1Truncation,
        Stage::N1Marking,
        Stage::N2Truncation,
        Stage::N2Marking,
    ];

    fn index(self) -> usize {
        self as usize
    }

    pub fn name(self) -> &'static str {
        match self {
            Stage::TemperedStable => "tempered_stable",
            Stage::Gamma => "gamma",
            Stage::N1Truncation => "n1_incomplete_gamma",
            Stage::N1Marking => "n1_hankel",
            Stage::N2Truncation => "n2_incomplete_gamma",
            Stage::N2Marking => "n2_hankel",
        }
    }
}

/// Per-stage counts and extreme values of thinning probabilities.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StageStats {
    pub evaluated: u64,
    pub accepted: u64,
    pub min_prob: f64,
    pub max_prob: f64,
}

impl Default for StageStats {
    fn default() -> Self {
        Self { evaluated: 0, accepted: 0, min_prob: f64::INFINITY, max_prob: f64::NEG_INFINITY }
    }
}

/// Records every thinning probability drawn while sampling. A probability
/// outside `[0, 1 + BOUND_SLACK]` aborts sampling with
/// [`Error::BoundViolation`].
#[derive(Debug, Clone, Default)]
pub struct AcceptanceLog {
    stats: [StageStats; 6],
}

impl AcceptanceLog {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn stage(&self, stage: Stage) -> StageStats {
        self.stats[stage.index()]
    }

    pub fn total_evaluated(&self) -> u64 {
        self.stats.iter().map(|s| s.evaluated).sum()
    }

    pub fn merge(&mut self, other: &AcceptanceLog) {
        for (a, b) in self.stats.iter_mut().zip(other.stats.iter()) {
            a.evaluated += b.evaluated;
            a.accepted += b.accepted;
            a.min_prob = a.min_prob.min(b.min_prob);
            a.max_prob = a.max_prob.max(b.max_prob);
        }
    }

    /// Checks `prob`, records it and returns whether the point survives.
    #[inline]
    pub fn thin<R: Rng + ?Sized>(&mut self, stage: Stage, prob: f64, rng: &mut R) -> Result<bool> {
        if !(0.0..=1.0 + BOUND_SLACK).contains(&prob) {
            return Err(Error::BoundViolation { stage: stage.name(), prob });
        }
        let s = &mut self.stats[stage.index()];
        s.evaluated += 1;
        s.min_prob = s.min_prob.min(prob);
        s.max_prob = s.max_prob.max(prob);
        let keep = rng.random::<f64>() < prob;
        if keep {
            s.accepted += 1;
        }
        Ok(keep)
    }
}

fn epochs_from_increments(increments: impl IntoIterator<Item = f64>, rate: f64, ceiling: f64) -> Vec<f64> {
    let mut acc = 0.0;
    let mut out = Vec::new();
    for e in increments {
        acc += e;
        let epoch = acc / rate;
        if epoch > ceiling {
            break;
        }
        out.push(epoch);
    }
    out
}

/// Epochs of a rate-`rate` Poisson process up to `budget.gamma_max()`,
/// built from cumulative standard exponential increments.
pub fn poisson_epochs<R: Rng + ?Sized>(rate: f64, budget: TruncationBudget, rng: &mut R) -> Result<Vec<f64>> {
    if !(rate > 0.0) || !rate.is_finite() {
        return Err(Error::InvalidParameter(format!("Poisson rate must be > 0, got {rate}")));
    }
    let draws = std::iter::from_fn(|| Some(Exp1.sample(rng)));
    Ok(epochs_from_increments(draws, rate, budget.gamma_max()))
}

fn check_tempered_stable(c: f64, alpha: f64, beta: f64) -> Result<()> {
    if !(c > 0.0) || !c.is_finite() {
        return Err(Error::InvalidParameter(format!("tempered stable C must be > 0, got {c}")));
    }
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(Error::InvalidParameter(format!("tempered stable alpha must lie in (0, 1), got {alpha}")));
    }
    if !(beta >= 0.0) || !beta.is_finite() {
        return Err(Error::InvalidParameter(format!("tempered stable beta must be >= 0, got {beta}")));
    }
    Ok(())
}

fn check_gamma(c: f64, beta: f64) -> Result<()> {
    if !(c > 0.0) || !c.is_finite() || !(beta > 0.0) || !beta.is_finite() {
        return Err(Error::InvalidParameter(format!("gamma process needs C > 0 and beta > 0, got C={c}, beta={beta}")));
    }
    Ok(())
}

/// Candidate jump of the stable process `C x^{-1-α}` at epoch `Γ`.
#[inline]
pub(crate) fn stable_jump(c: f64, alpha: f64, epoch: f64) -> f64 {
    if alpha == 0.5 {
        let r = c / (alpha * epoch);
        r * r
    } else {
        (alpha * epoch / c).powf(-1.0 / alpha)
    }
}

/// Candidate jump of the dominating density `C x^{-1} (1+βx)^{-1}`.
#[inline]
pub(crate) fn gamma_dominating_jump(c: f64, beta: f64, epoch: f64) -> f64 {
    1.0 / (beta * (epoch / c).exp_m1())
}

/// Feeds the accepted tempered stable jumps, largest first, to `sink`.
pub(crate) fn for_each_tempered_stable<R, F>(
    c: f64,
    alpha: f64,
    beta: f64,
    ceiling: f64,
    rng: &mut R,
    log: &mut AcceptanceLog,
    mut sink: F,
) -> Result<()>
where
    R: Rng + ?Sized,
    F: FnMut(f64, &mut R, &mut AcceptanceLog) -> Result<()>,
{
    check_tempered_stable(c, alpha, beta)?;
    let mut epoch = 0.0;
    loop {
        let e: f64 = Exp1.sample(rng);
        epoch += e;
        if epoch > ceiling {
            return Ok(());
        }
        let x = stable_jump(c, alpha, epoch);
        if log.thin(Stage::TemperedStable, (-beta * x).exp(), rng)? {
            sink(x, rng, log)?;
        }
    }
}

/// Feeds the accepted gamma-process jumps, largest first, to `sink`.
/// Stops early once candidates underflow to zero.
pub(crate) fn for_each_gamma<R, F>(
    c: f64,
    beta: f64,
    ceiling: f64,
    rng: &mut R,
    log: &mut AcceptanceLog,
    mut sink: F,
) -> Result<()>
where
    R: Rng + ?Sized,
    F: FnMut(f64, &mut R, &mut AcceptanceLog) -> Result<()>,
{
    check_gamma(c, beta)?;
    let mut epoch = 0.0;
    loop {
        let e: f64 = Exp1.sample(rng);
        epoch += e;
        if epoch > ceiling {
            return Ok(());
        }
        let x = gamma_dominating_jump(c, beta, epoch);
        if !(x > 0.0) {
            return Ok(());
        }
        let bx = beta * x;
        if log.thin(Stage::Gamma, (1.0 + bx) * (-bx).exp(), rng)? {
            sink(x, rng, log)?;
        }
    }
}

/// Jumps of the tempered stable process with Lévy density
/// `C x^{-1-α} e^{-βx}`, epochs truncated at `budget.gamma_max()`.
pub fn sample_tempered_stable<R: Rng + ?Sized>(
    c: f64,
    alpha: f64,
    beta: f64,
    budget: TruncationBudget,
    rng: &mut R,
) -> Result<Vec<f64>> {
    sample_tempered_stable_logged(c, alpha, beta, budget, rng, &mut AcceptanceLog::new())
}

pub fn sample_tempered_stable_logged<R: Rng + ?Sized>(
    c: f64,
    alpha: f64,
    beta: f64,
    budget: TruncationBudget,
    rng: &mut R,
    log: &mut AcceptanceLog,
) -> Result<Vec<f64>> {
    let mut out = Vec::new();
    for_each_tempered_stable(c, alpha, beta, budget.gamma_max(), rng, log, |x, _, _| {
        out.push(x);
        Ok(())
    })?;
    Ok(out)
}

/// Jumps of the gamma process with Lévy density `C x^{-1} e^{-βx}`.
pub fn sample_gamma_process<R: Rng + ?Sized>(
    c: f64,
    beta: f64,
    budget: TruncationBudget,
    rng: &mut R,
) -> Result<Vec<f64>> {
    sample_gamma_process_logged(c, beta, budget, rng, &mut AcceptanceLog::new())
}

pub fn sample_gamma_process_logged<R: Rng + ?Sized>(
    c: f64,
    beta: f64,
    budget: TruncationBudget,
    rng: &mut R,
    log: &mut AcceptanceLog,
) -> Result<Vec<f64>> {
    let mut out = Vec::new();
    for_each_gamma(c, beta, budget.gamma_max(), rng, log, |x, _, _| {
        out.push(x);
        Ok(())
    })?;
    Ok(out)
}
