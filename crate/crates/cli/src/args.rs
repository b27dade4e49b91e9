use std::path::PathBuf;

use clap::{ArgAction, Args, Parser, Subcommand};

use crate::config::Settings;

#[derive(Debug, Parser)]
#[command(
    name = "levy-ssm",
    version,
    about = "Simulate and filter Langevin models driven by generalised hyperbolic Lévy noise"
)]
pub struct Cli {
    #[command(flatten)]
    pub common: Common,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct Common {
    /// Flat TOML file of settings; flags take precedence over it.
    #[arg(long, global = true, value_name = "PATH")]
    pub config: Option<PathBuf>,
    /// RNG seed (overrides LEVY_SSM_SEED and the config file).
    #[arg(long, global = true, value_name = "N")]
    pub seed: Option<u64>,
    /// Output file; standard output when omitted.
    #[arg(long, global = true, value_name = "PATH")]
    pub out: Option<PathBuf>,
    /// MH chain length per observation, including the initial draw.
    #[arg(long, global = true, value_name = "N")]
    pub iters: Option<usize>,
    /// Shot-noise truncation: Poisson epochs per unit time.
    #[arg(long, global = true, value_name = "G")]
    pub budget: Option<f64>,
    /// Leading chain states discarded before collapsing.
    #[arg(long = "burn-in", global = true, value_name = "B")]
    pub burn_in: Option<usize>,
    /// Increase log verbosity (-v info, -vv debug).
    #[arg(short, long, global = true, action = ArgAction::Count)]
    pub verbose: u8,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Simulate a Langevin path and noisy position observations.
    Simulate {
        /// Truth file of latent states (time, x, xdot).
        #[arg(long, value_name = "PATH")]
        truth: Option<PathBuf>,
        /// Optional file of subordinator jumps (time, z).
        #[arg(long, value_name = "PATH")]
        jumps: Option<PathBuf>,
        /// Number of equally spaced observations on (0, t_end].
        #[arg(long, value_name = "N")]
        n_obs: Option<usize>,
        #[arg(long, value_name = "T")]
        t_end: Option<f64>,
        /// CSV whose first column gives the observation times.
        #[arg(long, value_name = "PATH")]
        times: Option<PathBuf>,
    },
    /// Run the sequential MCMC filter over a (time, value) series.
    Filter {
        #[arg(value_name = "INPUT")]
        input: Option<PathBuf>,
        /// Also write an SVG plot of the state estimates.
        #[arg(long, value_name = "PATH")]
        plot: Option<PathBuf>,
    },
    /// Run the distributional validation suite and write a JSON report.
    Validate {
        /// KS significance level.
        #[arg(long)]
        alpha: Option<f64>,
        #[arg(long, value_name = "N")]
        ks_samples: Option<usize>,
        #[arg(long, value_name = "G")]
        ks_budget: Option<f64>,
        #[arg(long, value_name = "N")]
        moment_sequences: Option<usize>,
        #[arg(long, value_name = "N")]
        moment_resamples: Option<usize>,
        #[arg(long, value_name = "N")]
        bound_candidates: Option<u64>,
    },
    /// Keep every k-th row, with times relative to the first kept row.
    Downsample {
        #[arg(value_name = "INPUT")]
        input: Option<PathBuf>,
        #[arg(short, long, value_name = "K", value_parser = clap::value_parser!(u64).range(1..))]
        k: Option<u64>,
    },
}

impl Cli {
    /// Settings given on the command line.
    pub fn settings(&self) -> Settings {
        let c = &self.common;
        let mut s = Settings {
            seed: c.seed,
            out: c.out.clone(),
            iters: c.iters,
            budget: c.budget,
            burn_in: c.burn_in,
            ..Settings::default()
        };
        match &self.command {
            Command::Simulate { truth, jumps, n_obs, t_end, times } => {
                s.truth = truth.clone();
                s.jumps = jumps.clone();
                s.n_obs = *n_obs;
                s.t_end = *t_end;
                s.times = times.clone();
            }
            Command::Filter { input, plot } => {
                s.input = input.clone();
                s.plot = plot.clone();
            }
            Command::Validate {
                alpha,
                ks_samples,
                ks_budget,
                moment_sequences,
                moment_resamples,
                bound_candidates,
            } => {
                s.alpha = *alpha;
                s.ks_samples = *ks_samples;
                s.ks_budget = *ks_budget;
                s.moment_sequences = *moment_sequences;
                s.moment_resamples = *moment_resamples;
                s.bound_candidates = *bound_candidates;
            }
            Command::Downsample { input, k } => {
                s.input = input.clone();
                s.k = k.map(|k| k as usize);
            }
        }
        s
    }
}
