use std::path::{Path, PathBuf};

use levy_ssm::ssm::SimulatedPath;
use levy_ssm::validation::{default_suite, CheckResult};
use levy_ssm::{run_filter, simulate_path, stream_rng, FilterStepResult, TruncationBudget, Z1Choice, RNG_NAME};
use nalgebra::DVector;
use serde_json::json;

use crate::config::RunConfig;
use crate::error::{CliError, CliResult};
use crate::plot::{self, Panel};
use crate::series::{emit, fmt_f64, render_csv, Provenance, SeriesFile, Table};

pub const FILTER_COLUMNS: [&str; 8] =
    ["time", "mean_x", "mean_xdot", "var_x", "var_xdot", "cov_x_xdot", "acceptance_rate", "log_marginal"];

fn provenance(command: &str, cfg: &RunConfig) -> Provenance {
    let m = &cfg.model;
    Provenance::new(command, cfg.seed)
        .with("theta", fmt_f64(m.theta))
        .with("mu_w", fmt_f64(m.mu_w))
        .with("sigma_w", fmt_f64(m.sigma_w))
        .with("mu", fmt_f64(m.mu))
        .with("lambda", fmt_f64(m.lambda))
        .with("delta", fmt_f64(m.delta))
        .with("gamma", fmt_f64(m.gamma))
        .with("sigma_eps", fmt_f64(m.sigma_eps))
        .with("budget", fmt_f64(cfg.budget))
}

fn require<'a>(p: &'a Option<PathBuf>, what: &str) -> CliResult<&'a Path> {
    p.as_deref().ok_or_else(|| CliError::Usage(format!("{what} is required")))
}

/// `<dir>/<stem>_truth.csv` next to the observation file.
pub fn default_truth_path(out: &Path) -> PathBuf {
    let stem = out.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
    out.with_file_name(format!("{stem}_truth.csv"))
}

fn observation_times(cfg: &RunConfig) -> CliResult<Vec<f64>> {
    match &cfg.times {
        Some(path) => {
            let table = Table::read(path)?;
            Ok(table.rows.iter().map(|r| r[0]).collect())
        }
        None => Ok((1..=cfg.n_obs).map(|i| cfg.t_end * i as f64 / cfg.n_obs as f64).collect()),
    }
}

/// Simulated observations together with the full latent path.
pub fn simulate(cfg: &RunConfig) -> CliResult<(SeriesFile, SimulatedPath)> {
    let ssm = cfg.ssm()?;
    let times = observation_times(cfg)?;
    let z1 = cfg.z1.map_or(Z1Choice::Auto, Z1Choice::Fixed).resolve(&ssm.gh().gig)?;
    let budget = TruncationBudget::new(cfg.budget)?;
    let path = simulate_path(&ssm, &DVector::zeros(2), &times, budget, z1, &mut stream_rng(cfg.seed, 0))?;
    let series = SeriesFile::new("y", times.iter().copied().zip(path.observations.iter().copied()).collect());
    Ok((series, path))
}

pub fn cmd_simulate(cfg: &RunConfig) -> CliResult<()> {
    let (series, path) = simulate(cfg)?;
    let prov = provenance("simulate", cfg);
    emit(cfg.out.as_deref(), &series.to_csv(&prov))?;

    let truth = cfg.truth.clone().or_else(|| cfg.out.as_deref().map(default_truth_path));
    match truth {
        Some(t) => {
            let rows = path.times.iter().zip(&path.states).map(|(&t, x)| vec![t, x[0], x[1]]);
            emit(Some(&t), &render_csv(&prov, &["time", "x", "xdot"], rows))?;
            log::info!("wrote truth to {}", t.display());
        }
        None => log::info!("no truth file written (pass --truth or --out)"),
    }
    if let Some(j) = &cfg.jumps {
        let rows = path.jumps.iter().flat_map(|s| s.iter().map(|r| vec![r.time, r.z]));
        emit(Some(j), &render_csv(&prov, &["time", "z"], rows))?;
    }
    Ok(())
}

/// Filter results for a series, with the diffuse prior at `min(0, t₀)`.
pub fn filter(cfg: &RunConfig, series: &SeriesFile) -> CliResult<Vec<FilterStepResult>> {
    let ssm = cfg.ssm()?;
    let start = series.rows.first().map_or(0.0, |r| r.0.min(0.0));
    Ok(run_filter(&ssm, &series.rows, &cfg.filter_config(start)?)?)
}

pub fn cmd_filter(cfg: &RunConfig) -> CliResult<()> {
    let input = require(&cfg.input, "an input series")?;
    let series = SeriesFile::read(input)?;
    let res = filter(cfg, &series)?;
    let prov = provenance("filter", cfg).with("iters", cfg.iters).with("burn_in", cfg.burn_in);
    let rows = series.rows.iter().zip(&res).map(|(&(t, _), r)| {
        let g = &r.collapsed;
        vec![t, g.mu[0], g.mu[1], g.cov[(0, 0)], g.cov[(1, 1)], g.cov[(0, 1)], r.acceptance_rate, r.log_marginal]
    });
    emit(cfg.out.as_deref(), &render_csv(&prov, &FILTER_COLUMNS, rows))?;
    if !res.is_empty() {
        let acc = res.iter().map(|r| r.acceptance_rate).sum::<f64>() / res.len() as f64;
        let ll: f64 = res.iter().map(|r| r.log_marginal).sum();
        log::info!("{} steps, mean acceptance {acc:.3}, total log-marginal {ll:.6}", res.len());
    }

    if let Some(p) = &cfg.plot {
        let times = series.times();
        let obs: Vec<f64> = series.rows.iter().map(|r| r.1).collect();
        let comp = |i: usize| -> (Vec<f64>, Vec<f64>) {
            res.iter().map(|r| (r.collapsed.mu[i], r.collapsed.cov[(i, i)].max(0.0).sqrt())).unzip()
        };
        let ((mx, sx), (mv, sv)) = (comp(0), comp(1));
        let svg = plot::render(
            &times,
            &[
                Panel { title: "position: mean and ±3σ", mean: mx, sd: sx, points: Some(&obs) },
                Panel { title: "velocity: mean and ±3σ", mean: mv, sd: sv, points: None },
            ],
        );
        emit(Some(p), &svg)?;
    }
    Ok(())
}

fn check_json(c: &CheckResult) -> serde_json::Value {
    json!({
        "name": c.name,
        "passed": c.passed,
        "statistic": c.statistic,
        "threshold": c.threshold,
        "sample_size": c.sample_size,
        "detail": c.detail,
    })
}

/// Runs the suite and renders the JSON report.
pub fn validate(cfg: &RunConfig) -> CliResult<(Vec<CheckResult>, String)> {
    let checks = default_suite(cfg.seed, cfg.suite, cfg.alpha)?;
    let s = &cfg.suite;
    let report = json!({
        "generator": RNG_NAME,
        "seed": cfg.seed,
        "alpha": cfg.alpha,
        "sizes": {
            "ks_samples": s.ks_samples,
            "ks_budget": s.ks_budget,
            "moment_sequences": s.moment_sequences,
            "moment_resamples": s.moment_resamples,
            "bound_candidates": s.bound_candidates,
        },
        "passed": checks.iter().all(|c| c.passed),
        "checks": checks.iter().map(check_json).collect::<Vec<_>>(),
    });
    let mut text = serde_json::to_string_pretty(&report).expect("report is valid JSON");
    text.push('\n');
    Ok((checks, text))
}

pub fn cmd_validate(cfg: &RunConfig) -> CliResult<()> {
    let (checks, text) = validate(cfg)?;
    emit(cfg.out.as_deref(), &text)?;
    for c in &checks {
        log::info!(
            "{} {}: {} (threshold {})",
            if c.passed { "PASS" } else { "FAIL" },
            c.name,
            c.statistic,
            c.threshold
        );
    }
    let failed = checks.iter().filter(|c| !c.passed).count();
    if failed > 0 {
        return Err(CliError::ChecksFailed { failed, total: checks.len() });
    }
    Ok(())
}

/// Every `k`-th row starting with the first, times shifted to start at 0.
pub fn downsample(series: &SeriesFile, k: usize) -> SeriesFile {
    let t0 = series.rows.first().map_or(0.0, |r| r.0);
    let rows = series.rows.iter().step_by(k.max(1)).map(|&(t, v)| (t - t0, v)).collect();
    SeriesFile::new(series.value_name.clone(), rows)
}

pub fn cmd_downsample(cfg: &RunConfig) -> CliResult<()> {
    let input = require(&cfg.input, "an input series")?;
    let k = cfg.k.ok_or_else(|| CliError::Usage("downsampling factor k is required".into()))?;
    let series = SeriesFile::read(input)?;
    if k > series.rows.len() && !series.rows.is_empty() {
        log::warn!("k = {k} exceeds the {} input rows; keeping only the first row", series.rows.len());
    }
    let out = downsample(&series, k);
    let prov = Provenance::new("downsample", cfg.seed).with("k", k);
    emit(cfg.out.as_deref(), &out.to_csv(&prov))
}
