//! Run configuration: built-in defaults, then a flat TOML file, then the
//! `LEVY_SSM_SEED` environment variable, then command-line flags.

use std::path::{Path, PathBuf};

use levy_ssm::validation::SuiteSize;
use levy_ssm::{FilterConfig, GaussianState, GhParams, GigParams, LinearSsm, TruncationBudget, Z1Choice};
use serde::Deserialize;

use crate::error::{CliError, CliResult};

pub const SEED_ENV: &str = "LEVY_SSM_SEED";

/// Every settable key. All fields are optional so that layers can be merged.
#[derive(Debug, Clone, Default, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Settings {
    pub seed: Option<u64>,

    pub theta: Option<f64>,
    pub mu_w: Option<f64>,
    pub sigma_w: Option<f64>,
    pub mu: Option<f64>,
    pub lambda: Option<f64>,
    pub delta: Option<f64>,
    pub gamma: Option<f64>,
    pub sigma_eps: Option<f64>,

    pub iters: Option<usize>,
    pub burn_in: Option<usize>,
    pub budget: Option<f64>,
    pub z1: Option<f64>,
    pub initial_variance: Option<f64>,

    pub n_obs: Option<usize>,
    pub t_end: Option<f64>,
    pub times: Option<PathBuf>,

    pub input: Option<PathBuf>,
    pub out: Option<PathBuf>,
    pub truth: Option<PathBuf>,
    pub jumps: Option<PathBuf>,
    pub plot: Option<PathBuf>,

    pub k: Option<usize>,

    pub alpha: Option<f64>,
    pub ks_samples: Option<usize>,
    pub ks_budget: Option<f64>,
    pub moment_sequences: Option<usize>,
    pub moment_resamples: Option<usize>,
    pub bound_candidates: Option<u64>,
}

macro_rules! overlay {
    ($base:ident, $top:ident; $($f:ident),* $(,)?) => {
        $( if $top.$f.is_some() { $base.$f = $top.$f; } )*
    };
}

impl Settings {
    /// Values set in `top` replace those in `self`.
    pub fn overlay(mut self, top: Settings) -> Settings {
        overlay!(self, top;
            seed, theta, mu_w, sigma_w, mu, lambda, delta, gamma, sigma_eps,
            iters, burn_in, budget, z1, initial_variance, n_obs, t_end, times,
            input, out, truth, jumps, plot, k,
            alpha, ks_samples, ks_budget, moment_sequences, moment_resamples, bound_candidates,
        );
        self
    }

    /// Parses a config file. Relative paths inside it are taken relative to
    /// the file's directory.
    pub fn from_toml(text: &str, path: &Path) -> CliResult<Settings> {
        let mut s: Settings =
            toml::from_str(text).map_err(|e| CliError::Config { path: path.to_path_buf(), msg: e.to_string() })?;
        let dir = path.parent().unwrap_or(Path::new(""));
        for p in [&mut s.times, &mut s.input, &mut s.out, &mut s.truth, &mut s.jumps, &mut s.plot].into_iter().flatten()
        {
            if p.is_relative() {
                *p = dir.join(&*p);
            }
        }
        Ok(s)
    }

    pub fn read(path: &Path) -> CliResult<Settings> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
        Self::from_toml(&text, path)
    }

    pub fn from_env_seed(value: Option<&str>) -> CliResult<Settings> {
        let seed = match value {
            None => None,
            Some(v) => Some(
                v.trim()
                    .parse::<u64>()
                    .map_err(|_| CliError::Usage(format!("{SEED_ENV} must be an unsigned integer, got {v:?}")))?,
            ),
        };
        Ok(Settings { seed, ..Settings::default() })
    }
}

/// Langevin model parameters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModelParams {
    pub theta: f64,
    pub mu_w: f64,
    pub sigma_w: f64,
    pub mu: f64,
    pub lambda: f64,
    pub delta: f64,
    pub gamma: f64,
    pub sigma_eps: f64,
}

impl ModelParams {
    pub fn ssm(&self) -> levy_ssm::Result<LinearSsm> {
        let gig = GigParams::new(self.lambda, self.delta, self.gamma)?;
        let gh = GhParams::new(gig, self.mu_w, self.sigma_w, self.mu)?;
        LinearSsm::langevin(self.theta, self.sigma_eps, gh)
    }
}

/// Fully resolved configuration.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub seed: u64,
    pub model: ModelParams,
    pub iters: usize,
    pub burn_in: usize,
    pub budget: f64,
    pub z1: Option<f64>,
    pub initial_variance: f64,
    pub n_obs: usize,
    pub t_end: f64,
    pub times: Option<PathBuf>,
    pub input: Option<PathBuf>,
    pub out: Option<PathBuf>,
    pub truth: Option<PathBuf>,
    pub jumps: Option<PathBuf>,
    pub plot: Option<PathBuf>,
    pub k: Option<usize>,
    pub alpha: f64,
    pub suite: SuiteSize,
}

impl RunConfig {
    /// Applies defaults and checks every parameter against the model and
    /// filter constructors.
    pub fn resolve(s: Settings) -> CliResult<RunConfig> {
        let suite_default = SuiteSize::default();
        let cfg = RunConfig {
            seed: s.seed.unwrap_or(0),
            model: ModelParams {
                theta: s.theta.unwrap_or(-0.5),
                mu_w: s.mu_w.unwrap_or(0.0),
                sigma_w: s.sigma_w.unwrap_or(1.0),
                mu: s.mu.unwrap_or(0.0),
                lambda: s.lambda.unwrap_or(-0.8),
                delta: s.delta.unwrap_or(1.0),
                gamma: s.gamma.unwrap_or(0.01),
                sigma_eps: s.sigma_eps.unwrap_or(0.1),
            },
            iters: s.iters.unwrap_or(100),
            burn_in: s.burn_in.unwrap_or(0),
            budget: s.budget.unwrap_or(TruncationBudget::DEFAULT_GAMMA_MAX),
            z1: s.z1,
            initial_variance: s.initial_variance.unwrap_or(FilterConfig::DEFAULT_INITIAL_VARIANCE),
            n_obs: s.n_obs.unwrap_or(200),
            t_end: s.t_end.unwrap_or(100.0),
            times: s.times,
            input: s.input,
            out: s.out,
            truth: s.truth,
            jumps: s.jumps,
            plot: s.plot,
            k: s.k,
            alpha: s.alpha.unwrap_or(0.01),
            suite: SuiteSize {
                ks_samples: s.ks_samples.unwrap_or(suite_default.ks_samples),
                ks_budget: s.ks_budget.unwrap_or(suite_default.ks_budget),
                moment_sequences: s.moment_sequences.unwrap_or(suite_default.moment_sequences),
                moment_resamples: s.moment_resamples.unwrap_or(suite_default.moment_resamples),
                bound_candidates: s.bound_candidates.unwrap_or(suite_default.bound_candidates),
            },
        };
        cfg.check()?;
        Ok(cfg)
    }

    fn check(&self) -> CliResult<()> {
        self.model.ssm()?;
        self.filter_config(0.0)?.validate()?;
        if let Some(z1) = self.z1 {
            if !(z1 > 0.0) || !z1.is_finite() {
                return Err(CliError::Usage(format!("z1 must be positive, got {z1}")));
            }
        }
        if !(self.t_end > 0.0) || !self.t_end.is_finite() {
            return Err(CliError::Usage(format!("t_end must be positive, got {}", self.t_end)));
        }
        if self.k == Some(0) {
            return Err(CliError::Usage("k must be at least 1".into()));
        }
        if !(self.alpha > 0.0 && self.alpha <= 1.0) {
            return Err(CliError::Usage(format!("alpha must lie in (0, 1], got {}", self.alpha)));
        }
        TruncationBudget::new(self.suite.ks_budget)?;
        if self.suite.ks_samples < 2 || self.suite.moment_resamples < 2 {
            return Err(CliError::Usage("ks_samples and moment_resamples must be at least 2".into()));
        }
        Ok(())
    }

    pub fn ssm(&self) -> CliResult<LinearSsm> {
        Ok(self.model.ssm()?)
    }

    /// Filter settings with the diffuse prior placed at `start`.
    pub fn filter_config(&self, start: f64) -> CliResult<FilterConfig> {
        if !(self.initial_variance > 0.0) || !self.initial_variance.is_finite() {
            return Err(CliError::Usage(format!("initial_variance must be positive, got {}", self.initial_variance)));
        }
        Ok(FilterConfig {
            n_iter: self.iters,
            burn_in: self.burn_in,
            z1: self.z1.map_or(Z1Choice::Auto, Z1Choice::Fixed),
            budget: TruncationBudget::new(self.budget)?,
            seed: self.seed,
            initial: Some(GaussianState::diffuse(2, self.initial_variance, start)),
            store_chain: false,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_are_the_synthetic_experiment() {
        let c = RunConfig::resolve(Settings::default()).unwrap();
        assert_eq!(c.model.theta, -0.5);
        assert_eq!(c.model.lambda, -0.8);
        assert_eq!(c.model.gamma, 0.01);
        assert_eq!(c.model.delta, 1.0);
        assert_eq!(c.model.sigma_eps, 0.1);
        assert_eq!((c.n_obs, c.t_end, c.iters), (200, 100.0, 100));
    }

    #[test]
    fn precedence_file_env_flag() {
        let file = Settings::from_toml("seed = 1\niters = 7\n", Path::new("run.toml")).unwrap();
        let env = Settings::from_env_seed(Some("2")).unwrap();
        let flags = Settings { seed: Some(3), ..Settings::default() };
        let all = file.clone().overlay(env.clone()).overlay(flags);
        assert_eq!((all.seed, all.iters), (Some(3), Some(7)));
        let no_flag = file.clone().overlay(env).overlay(Settings::default());
        assert_eq!(no_flag.seed, Some(2));
        assert_eq!(file.overlay(Settings::from_env_seed(None).unwrap()).seed, Some(1));
    }

    #[test]
    fn paths_are_relative_to_the_config_file() {
        let s = Settings::from_toml("out = \"obs.csv\"\ntruth = \"/abs/t.csv\"\n", Path::new("exp/run.toml")).unwrap();
        assert_eq!(s.out.unwrap(), Path::new("exp/obs.csv"));
        assert_eq!(s.truth.unwrap(), Path::new("/abs/t.csv"));
    }

    #[test]
    fn rejects_bad_input() {
        assert!(matches!(Settings::from_toml("unknown_key = 1\n", Path::new("c.toml")), Err(CliError::Config { .. })));
        assert!(Settings::from_env_seed(Some("-4")).is_err());
        for s in [
            Settings { sigma_eps: Some(0.0), ..Settings::default() },
            Settings { lambda: Some(-0.3), ..Settings::default() },
            Settings { burn_in: Some(100), ..Settings::default() },
            Settings { theta: Some(0.2), ..Settings::default() },
        ] {
            assert!(RunConfig::resolve(s).is_err());
        }
    }
}
