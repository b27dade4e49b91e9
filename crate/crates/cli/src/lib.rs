//! Command-line front end for `levy-ssm`: configuration layering, CSV series
//! I/O, the `simulate` / `filter` / `validate` / `downsample` commands and an
//! SVG plot of filter output.

pub mod args;
pub mod commands;
pub mod config;
pub mod error;
pub mod plot;
pub mod series;

pub use args::{Cli, Command};
pub use config::{RunConfig, Settings, SEED_ENV};
pub use error::{CliError, CliResult};
pub use series::{Provenance, SeriesFile, Table};

/// Resolves settings from all layers and runs the selected command.
pub fn run(cli: &Cli, env_seed: Option<&str>) -> CliResult<()> {
    let file = match &cli.common.config {
        Some(p) => Settings::read(p)?,
        None => Settings::default(),
    };
    let settings = file.overlay(Settings::from_env_seed(env_seed)?).overlay(cli.settings());
    let cfg = RunConfig::resolve(settings)?;
    match cli.command {
        Command::Simulate { .. } => commands::cmd_simulate(&cfg),
        Command::Filter { .. } => commands::cmd_filter(&cfg),
        Command::Validate { .. } => commands::cmd_validate(&cfg),
        Command::Downsample { .. } => commands::cmd_downsample(&cfg),
    }
}
