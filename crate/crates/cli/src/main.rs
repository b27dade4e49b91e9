use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use levy_ssm_cli::{run, Cli, SEED_ENV};

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let level = match cli.common.verbose {
        0 => "warn",
        1 => "info",
        _ => "debug",
    };
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or(level))
        .format(|buf, rec| writeln!(buf, "levy-ssm: {}: {}", rec.level().as_str().to_lowercase(), rec.args()))
        .init();

    let env_seed = std::env::var(SEED_ENV).ok();
    match run(&cli, env_seed.as_deref()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("levy-ssm: error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
