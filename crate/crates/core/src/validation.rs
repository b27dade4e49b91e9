//! Statistical self-checks of the samplers against reference laws.
//!
//! Each check is deterministic given its seed: draw `i` of a suite uses the
//! random stream `(seed, i)`.

use std::f64::consts::PI;

use nalgebra::{DMatrix, DVector};
use rand_distr::{Distribution, StandardNormal};

use crate::error::{Error, Result};
use crate::jumps::{
    attach_gh_jumps, sample_gamma_process_logged, sample_gig, sample_gig_logged, sample_tempered_stable_logged,
    AcceptanceLog, GhParams, GigParams, Interval, JumpSequence, Stage, TruncationBudget,
};
use crate::numerics::{gh_pdf, gig_pdf, hankel1_abs_sq};
use crate::quad::{integrate, integrate_from_neg_inf, Tolerance};
use crate::rng::stream_rng;
use crate::ssm::{cond_moments, LinearSsm};
use crate::stats::{ks_p_value, ks_statistic_sorted};

/// Outcome of one named check.
#[derive(Debug, Clone, PartialEq)]
pub struct CheckResult {
    pub name: String,
    pub passed: bool,
    pub statistic: f64,
    pub threshold: f64,
    pub sample_size: u64,
    pub detail: String,
}

/// KS statistic and asymptotic p-value.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KsOutcome {
    pub statistic: f64,
    pub p_value: f64,
    pub n: usize,
}

/// CDF at ascending points, accumulated panel by panel from `lower_mass`
/// (the probability below `sorted[0]`).
fn cumulative_cdf<F: Fn(f64) -> f64>(sorted: &[f64], pdf: F, lower_mass: f64) -> Vec<f64> {
    let tol = Tolerance { abs: 1e-13, rel: 1e-10 };
    let mut out = Vec::with_capacity(sorted.len());
    let mut acc = lower_mass;
    let mut prev = match sorted.first() {
        Some(&x) => x,
        None => return out,
    };
    for &x in sorted {
        if x > prev {
            acc += integrate(&pdf, prev, x, tol);
            prev = x;
        }
        out.push(acc.min(1.0));
    }
    out
}

fn ks(mut sample: Vec<f64>, cdf: impl FnOnce(&[f64]) -> Vec<f64>) -> KsOutcome {
    sample.sort_by(f64::total_cmp);
    let values = cdf(&sample);
    let d = ks_statistic_sorted(&values);
    KsOutcome { statistic: d, p_value: ks_p_value(d, sample.len()), n: sample.len() }
}

fn unit_interval() -> Interval {
    Interval { start: 0.0, end: 1.0 }
}

/// `n` draws of `Σ Z_i` over a unit interval.
pub fn gig_sum_samples(params: &GigParams, z1: f64, budget: TruncationBudget, n: usize, seed: u64) -> Result<Vec<f64>> {
    (0..n)
        .map(|i| {
            let mut rng = stream_rng(seed, i as u64);
            Ok(sample_gig(params, z1, unit_interval(), budget, &mut rng)?.total_z())
        })
        .collect()
}

/// KS test of [`gig_sum_samples`] against the GIG law, with the CDF obtained
/// by quadrature of the density.
pub fn gig_ks(params: &GigParams, z1: f64, budget: TruncationBudget, n: usize, seed: u64) -> Result<KsOutcome> {
    let sample = gig_sum_samples(params, z1, budget, n, seed)?;
    if let Some(bad) = sample.iter().find(|x| !(**x > 0.0)) {
        return Err(Error::InvalidParameter(format!("GIG sum {bad} is not positive; budget too small for a KS test")));
    }
    let (l, d, g) = (params.lambda(), params.delta(), params.gamma());
    let pdf = move |x: f64| if x > 0.0 { gig_pdf(x, l, d, g).unwrap_or(0.0) } else { 0.0 };
    Ok(ks(sample, |s| {
        let below = integrate(pdf, 0.0, s[0], Tolerance { abs: 1e-14, rel: 1e-10 });
        cumulative_cdf(s, pdf, below)
    }))
}

/// `n` draws of `μ + Σ W_i` over a unit interval, with `W_i` attached to
/// the GIG jumps as normal variance-mean mixtures.
pub fn gh_sum_samples(params: &GhParams, z1: f64, budget: TruncationBudget, n: usize, seed: u64) -> Result<Vec<f64>> {
    (0..n)
        .map(|i| {
            let mut rng = stream_rng(seed, i as u64);
            let seq = sample_gig(&params.gig, z1, unit_interval(), budget, &mut rng)?;
            let seq = attach_gh_jumps(seq, params, &mut rng);
            Ok(params.mu + seq.iter().filter_map(|r| r.w).sum::<f64>())
        })
        .collect()
}

/// KS test of [`gh_sum_samples`] against the GH density.
pub fn gh_ks(params: &GhParams, z1: f64, budget: TruncationBudget, n: usize, seed: u64) -> Result<KsOutcome> {
    let sample = gh_sum_samples(params, z1, budget, n, seed)?;
    let classic = params.classic()?;
    let pdf = move |x: f64| gh_pdf(x, &classic).unwrap_or(0.0);
    Ok(ks(sample, |s| {
        let below = integrate_from_neg_inf(pdf, s[0], Tolerance { abs: 1e-14, rel: 1e-10 });
        cumulative_cdf(s, pdf, below)
    }))
}

/// Largest deviation of `πz |H_{1/2}(z)|²` from 2 on a log grid.
pub fn hankel_half_order_error() -> Result<f64> {
    let mut worst = 0.0f64;
    for k in -40..=40 {
        let z = 10f64.powf(k as f64 / 10.0);
        worst = worst.max((PI * z * hankel1_abs_sq(0.5, z)? - 2.0).abs());
    }
    Ok(worst)
}

/// Relative Frobenius errors of Monte-Carlo moments against [`cond_moments`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MomentErrors {
    pub mean: f64,
    pub cov: f64,
}

/// Resamples the normal components of `W_i = μ_W Z_i + σ_W √Z_i U_i` for a
/// fixed jump sequence and compares the moments of `Σ f_t(V_i) W_i` with the
/// closed forms.
pub fn moment_errors(ssm: &LinearSsm, seq: &JumpSequence, resamples: usize, seed: u64) -> Result<MomentErrors> {
    let iv = seq.interval();
    let t = iv.end;
    let mut gh = *ssm.gh();
    gh.mu = 0.0;
    let ssm = ssm.clone().with_gh(gh);
    let exact = cond_moments(&ssm, seq, iv.start, t)?;
    let d = ssm.dim();
    // Flattened impulse responses, then per-jump location and scale of W.
    let mut resp: Vec<f64> = Vec::with_capacity(seq.len() * d);
    let mut loc_scale = Vec::with_capacity(seq.len());
    for r in seq.iter() {
        resp.extend(ssm.impulse(t - r.time)?.iter());
        loc_scale.push((gh.mu_w * r.z, gh.sigma_w * r.z.sqrt()));
    }
    let mut rng = stream_rng(seed, 0);
    let mut sum = vec![0.0; d];
    let mut sum_sq = vec![0.0; d * d];
    let mut x = vec![0.0f64; d];
    for _ in 0..resamples {
        x.fill(0.0);
        for (f, &(loc, scale)) in resp.chunks_exact(d).zip(&loc_scale) {
            let u: f64 = StandardNormal.sample(&mut rng);
            let w = loc + scale * u;
            for (xi, fi) in x.iter_mut().zip(f) {
                *xi += w * fi;
            }
        }
        for i in 0..d {
            sum[i] += x[i];
            for j in 0..d {
                sum_sq[i * d + j] += x[i] * x[j];
            }
        }
    }
    let n = resamples as f64;
    let mean = DVector::from_vec(sum) / n;
    let cov = (DMatrix::from_row_slice(d, d, &sum_sq) - &mean * mean.transpose() * n) / (n - 1.0);
    let rel = |err: f64, base: f64| if base > 0.0 { err / base } else { err };
    Ok(MomentErrors {
        mean: rel((&mean - &exact.m).norm(), exact.m.norm()),
        cov: rel((&cov - &exact.s).norm(), exact.s.norm()),
    })
}

/// Counts of thinning probabilities seen per algorithm.
#[derive(Debug, Clone, Default)]
pub struct BoundAudit {
    pub tempered_stable: AcceptanceLog,
    pub gamma: AcceptanceLog,
    pub gig: AcceptanceLog,
    pub violations: Vec<Error>,
}

impl BoundAudit {
    /// Candidates checked by each of the four algorithms.
    pub fn candidates(&self) -> [u64; 4] {
        [
            self.tempered_stable.stage(Stage::TemperedStable).evaluated,
            self.gamma.stage(Stage::Gamma).evaluated,
            self.gig.stage(Stage::N1Truncation).evaluated,
            self.gig.stage(Stage::N2Truncation).evaluated,
        ]
    }

    pub fn max_probability(&self) -> f64 {
        let mut m = f64::NEG_INFINITY;
        for log in [&self.tempered_stable, &self.gamma, &self.gig] {
            for s in Stage::ALL {
                m = m.max(log.stage(s).max_prob);
            }
        }
        m
    }

    pub fn min_probability(&self) -> f64 {
        let mut m = f64::INFINITY;
        for log in [&self.tempered_stable, &self.gig, &self.gamma] {
            for s in Stage::ALL {
                m = m.min(log.stage(s).min_prob);
            }
        }
        m
    }
}

fn record<T>(res: Result<T>, violations: &mut Vec<Error>) -> Result<()> {
    match res {
        Ok(_) => Ok(()),
        Err(e @ Error::BoundViolation { .. }) => {
            violations.push(e);
            Ok(())
        }
        Err(e) => Err(e),
    }
}

/// Runs every sampler until each algorithm has evaluated at least
/// `per_set` candidates for each parameter set. Parameter sets for the
/// tempered stable and gamma generators are derived from the GIG sets.
pub fn bound_audit(gig_sets: &[GigParams], per_set: u64, budget: TruncationBudget, seed: u64) -> Result<BoundAudit> {
    let mut audit = BoundAudit::default();
    let mut stream = 0u64;
    let mut next_rng = || {
        stream += 1;
        stream_rng(seed, stream)
    };
    for (k, p) in gig_sets.iter().enumerate() {
        let z1 = crate::jumps::z1_upper_bound(p.lambda())?;
        let alpha = 0.1 + 0.8 * (k as f64 + 0.5) / gig_sets.len() as f64;
        let c = p.delta();
        let beta = 0.5 * p.gamma() * p.gamma();

        let mut log = AcceptanceLog::new();
        while log.stage(Stage::TemperedStable).evaluated < per_set {
            let r = sample_tempered_stable_logged(c, alpha, beta, budget, &mut next_rng(), &mut log);
            record(r, &mut audit.violations)?;
            if !audit.violations.is_empty() {
                break;
            }
        }
        audit.tempered_stable.merge(&log);

        let mut log = AcceptanceLog::new();
        let c_gamma = 1.0 + k as f64;
        while log.stage(Stage::Gamma).evaluated < per_set {
            let r = sample_gamma_process_logged(c_gamma, beta.max(1e-3), budget, &mut next_rng(), &mut log);
            record(r, &mut audit.violations)?;
            if !audit.violations.is_empty() {
                break;
            }
        }
        audit.gamma.merge(&log);

        let mut log = AcceptanceLog::new();
        while log.stage(Stage::N1Truncation).evaluated < per_set || log.stage(Stage::N2Truncation).evaluated < per_set {
            let r = sample_gig_logged(p, z1, unit_interval(), budget, &mut next_rng(), &mut log);
            record(r, &mut audit.violations)?;
            if !audit.violations.is_empty() {
                break;
            }
        }
        audit.gig.merge(&log);
    }
    Ok(audit)
}

/// Sizes for [`default_suite`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SuiteSize {
    pub ks_samples: usize,
    pub ks_budget: f64,
    pub moment_sequences: usize,
    pub moment_resamples: usize,
    pub bound_candidates: u64,
}

impl Default for SuiteSize {
    fn default() -> Self {
        Self {
            ks_samples: 10_000,
            ks_budget: 5000.0,
            moment_sequences: 20,
            moment_resamples: 100_000,
            bound_candidates: 10_000,
        }
    }
}

/// GIG parameter sets exercised by the distributional checks.
pub fn reference_gig_sets() -> Result<Vec<GigParams>> {
    [(-0.8, 1.0, 2.0), (-1.5, 2.0, 1.0), (-0.6, 1.0, 3.0)].iter().map(|&(l, d, g)| GigParams::new(l, d, g)).collect()
}

/// Ten GIG parameter sets spanning the supported regime.
pub fn audit_gig_sets() -> Result<Vec<GigParams>> {
    [
        (-0.55, 1.0, 2.0),
        (-0.6, 1.0, 3.0),
        (-0.8, 1.0, 2.0),
        (-0.8, 1.0, 0.01),
        (-1.0, 0.5, 1.0),
        (-1.5, 2.0, 1.0),
        (-2.0, 1.0, 0.5),
        (-3.0, 3.0, 2.0),
        (-0.7, 0.2, 5.0),
        (-5.0, 1.5, 0.1),
    ]
    .iter()
    .map(|&(l, d, g)| GigParams::new(l, d, g))
    .collect()
}

/// GIG-KS, GH-KS, Hankel identity, moment matching and bound audit.
pub fn default_suite(seed: u64, size: SuiteSize, alpha: f64) -> Result<Vec<CheckResult>> {
    let mut out = Vec::new();
    let budget = TruncationBudget::new(size.ks_budget)?;

    for (k, p) in reference_gig_sets()?.iter().enumerate() {
        let z1 = crate::jumps::z1_upper_bound(p.lambda())?;
        let r = gig_ks(p, z1, budget, size.ks_samples, seed.wrapping_add(k as u64))?;
        out.push(CheckResult {
            name: format!("gig_ks(lambda={}, delta={}, gamma={})", p.lambda(), p.delta(), p.gamma()),
            passed: r.p_value > alpha,
            statistic: r.p_value,
            threshold: alpha,
            sample_size: r.n as u64,
            detail: format!("D = {}", r.statistic),
        });
    }

    let gig = GigParams::new(-0.8, 1.0, 2.0)?;
    let z1 = crate::jumps::z1_upper_bound(gig.lambda())?;
    for (k, mu_w) in [0.0, 0.5].into_iter().enumerate() {
        let gh = GhParams::new(gig, mu_w, 1.0, 0.0)?;
        let r = gh_ks(&gh, z1, budget, size.ks_samples, seed.wrapping_add(100 + k as u64))?;
        out.push(CheckResult {
            name: format!("gh_ks(mu_w={mu_w})"),
            passed: r.p_value > alpha,
            statistic: r.p_value,
            threshold: alpha,
            sample_size: r.n as u64,
            detail: format!("D = {}", r.statistic),
        });
    }

    let err = hankel_half_order_error()?;
    out.push(CheckResult {
        name: "hankel_half_order_identity".into(),
        passed: err <= 1e-9,
        statistic: err,
        threshold: 1e-9,
        sample_size: 81,
        detail: "max |pi z |H_1/2(z)|^2 - 2| on z in [1e-4, 1e4]".into(),
    });

    let gh = GhParams::new(GigParams::new(-0.8, 1.0, 0.5)?, 0.5, 1.0, 0.0)?;
    let ssm = LinearSsm::langevin(-0.5, 0.1, gh)?;
    let (mut worst_mean, mut worst_cov) = (0.0f64, 0.0f64);
    for k in 0..size.moment_sequences {
        let mut rng = stream_rng(seed.wrapping_add(200), k as u64);
        let iv = Interval::new(0.0, 2.0)?;
        let seq = sample_gig(&gh.gig, crate::jumps::z1_upper_bound(-0.8)?, iv, TruncationBudget::new(50.0)?, &mut rng)?;
        let e = moment_errors(&ssm, &seq, size.moment_resamples, seed.wrapping_add(300 + k as u64))?;
        worst_mean = worst_mean.max(e.mean);
        worst_cov = worst_cov.max(e.cov);
    }
    out.push(CheckResult {
        name: "conditional_moments".into(),
        passed: worst_mean <= 0.02 && worst_cov <= 0.02,
        statistic: worst_mean.max(worst_cov),
        threshold: 0.02,
        sample_size: (size.moment_sequences * size.moment_resamples) as u64,
        detail: format!("worst relative Frobenius error: mean {worst_mean}, covariance {worst_cov}"),
    });

    let audit = bound_audit(&audit_gig_sets()?, size.bound_candidates, TruncationBudget::default(), seed)?;
    let cand = audit.candidates();
    out.push(CheckResult {
        name: "dominating_bounds".into(),
        passed: audit.violations.is_empty() && audit.max_probability() <= 1.0 + 1e-9,
        statistic: audit.max_probability(),
        threshold: 1.0 + 1e-9,
        sample_size: cand.iter().sum(),
        detail: format!(
            "candidates per algorithm {:?}, violations {}, min probability {}",
            cand,
            audit.violations.len(),
            audit.min_probability()
        ),
    });
    Ok(out)
}
