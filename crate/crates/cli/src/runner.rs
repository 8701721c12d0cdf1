//! Sweep dispatch: the damping sweep, the intensity sweep, custom grids,
//! and the validation mode. Sweep members run concurrently and each writes
//! its own file, so output is deterministic per file.

use std::path::PathBuf;

use rayon::prelude::*;
use thiserror::Error;

use tpjc_core::params::ModelParams;

use crate::config::{ConfigError, Mode, SweepConfig};
use crate::trace::{compute_trace, trace_params, EntropyTrace};
use crate::validate::{run_validation, ValidationReport};

#[derive(Debug, Error)]
pub enum RunError {
    #[error(transparent)]
    Core(#[from] tpjc_core::Error),
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error("i/o failure on {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("row invariant violated at omega_t = {omega_t}: s_f = {s_f}, trace = {trace}")]
    RowInvariant { omega_t: f64, s_f: f64, trace: f64 },
}

/// What a run produced.
#[derive(Debug)]
pub enum RunOutcome {
    /// Paths of the CSV traces written.
    Traces(Vec<PathBuf>),
    /// Validation report (caller maps pass/fail to the exit status).
    Validation(ValidationReport),
}

/// Dispatch on the configured mode.
pub fn run(config: &SweepConfig, corrupt_kernel: bool) -> Result<RunOutcome, RunError> {
    config.validate()?;
    match config.mode {
        Mode::Fig1 => Ok(RunOutcome::Traces(run_fig1(config)?)),
        Mode::Fig2 => Ok(RunOutcome::Traces(run_fig2(config)?)),
        Mode::Custom => Ok(RunOutcome::Traces(run_custom(config)?)),
        Mode::Validate => {
            let params = validation_params(config)?;
            Ok(RunOutcome::Validation(run_validation(
                &params,
                config.epsilon,
                corrupt_kernel,
            )?))
        }
    }
}

/// Damping sweep: κ/Ω ∈ {0.02, 0.04, 0.1} at n̄ = 1, (β₂−β₁)/Ω = 0.02.
pub fn run_fig1(config: &SweepConfig) -> Result<Vec<PathBuf>, RunError> {
    let members: Vec<(f64, f64, String)> = [0.02, 0.04, 0.1]
        .iter()
        .map(|&kappa| (kappa, 1.0, format!("fig1_kappa{kappa}")))
        .collect();
    write_members(config, 0.02, &members)
}

/// Intensity sweep: n̄ ∈ {1, 2, 3} at κ/Ω = 0.04, (β₂−β₁)/Ω = 0.02.
pub fn run_fig2(config: &SweepConfig) -> Result<Vec<PathBuf>, RunError> {
    let members: Vec<(f64, f64, String)> = [1.0, 2.0, 3.0]
        .iter()
        .map(|&nbar| (0.04, nbar, format!("fig2_nbar{nbar}")))
        .collect();
    write_members(config, 0.02, &members)
}

/// Cartesian sweep over the configured κ and n̄ lists.
pub fn run_custom(config: &SweepConfig) -> Result<Vec<PathBuf>, RunError> {
    let mut members = Vec::new();
    for &kappa in &config.kappas {
        for &nbar in &config.nbars {
            members.push((kappa, nbar, format!("custom_kappa{kappa}_nbar{nbar}")));
        }
    }
    write_members(config, config.beta_diff, &members)
}

fn write_members(
    config: &SweepConfig,
    beta_diff: f64,
    members: &[(f64, f64, String)],
) -> Result<Vec<PathBuf>, RunError> {
    std::fs::create_dir_all(&config.out_dir).map_err(|source| RunError::Io {
        path: config.out_dir.display().to_string(),
        source,
    })?;
    members
        .par_iter()
        .map(|(kappa, nbar, label)| {
            let trace = compute_trace(
                label,
                *kappa,
                *nbar,
                beta_diff,
                config.t_max,
                config.samples,
                config.epsilon,
            )?;
            let path = config.out_dir.join(format!("{label}.csv"));
            trace.write_csv(&path).map_err(|source| RunError::Io {
                path: path.display().to_string(),
                source,
            })?;
            println!(
                "wrote {} ({} rows, dim {}, {} local maxima)",
                path.display(),
                trace.rows.len(),
                trace.meta.dim,
                trace.local_maxima_count()
            );
            Ok(path)
        })
        .collect()
}

/// Validation runs on the first κ/n̄ of the configured lists.
fn validation_params(config: &SweepConfig) -> Result<ModelParams, RunError> {
    trace_params(config.kappas[0], config.nbars[0], config.beta_diff)
}

/// Compute (not write) the trio of traces for a list of sweep members;
/// used by the tests to reason about ordering properties.
pub fn compute_members(
    config: &SweepConfig,
    beta_diff: f64,
    members: &[(f64, f64, String)],
) -> Result<Vec<EntropyTrace>, RunError> {
    members
        .par_iter()
        .map(|(kappa, nbar, label)| {
            compute_trace(
                label,
                *kappa,
                *nbar,
                beta_diff,
                config.t_max,
                config.samples,
                config.epsilon,
            )
        })
        .collect()
}
