//! `tpjc` — entropy sweeps and validation for the dissipative two-photon
//! Jaynes-Cummings model.
//!
//! Exit codes: 0 success, 1 validation or run failure, 2 configuration
//! error.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;

use tpjc_cli::config::{parse_list, Mode, SweepConfig};
use tpjc_cli::runner::{run, RunError, RunOutcome};

#[derive(Parser, Debug)]
#[command(
    name = "tpjc",
    version,
    about = "Field-entropy sweeps for the dissipative two-photon Jaynes-Cummings model"
)]
struct Cli {
    /// What to run.
    #[arg(long, value_enum)]
    mode: Mode,

    /// Optional key=value config file (flags override it).
    #[arg(long)]
    config: Option<PathBuf>,

    /// Comma-separated κ/Ω list (custom mode).
    #[arg(long)]
    kappa: Option<String>,

    /// Comma-separated n̄ list (custom mode).
    #[arg(long)]
    nbar: Option<String>,

    /// (β₂ − β₁)/Ω.
    #[arg(long)]
    beta_diff: Option<f64>,

    /// Horizon in Ω-units.
    #[arg(long)]
    tmax: Option<f64>,

    /// Grid points per trace (endpoints included).
    #[arg(long)]
    samples: Option<usize>,

    /// Truncation tail target for the initial coherent state.
    #[arg(long)]
    epsilon: Option<f64>,

    /// Output directory (also via TPJC_OUT_DIR).
    #[arg(long)]
    out: Option<PathBuf>,

    /// Self-test: corrupt the closed form entering the oracle comparison;
    /// validation must then fail.
    #[arg(long, default_value_t = false)]
    corrupt_kernel: bool,
}

fn build_config(cli: &Cli) -> Result<SweepConfig, RunError> {
    let mut config = SweepConfig::defaults(cli.mode);
    if let Some(path) = &cli.config {
        config.apply_file(path)?;
    }
    // The --mode flag wins over a mode in the config file.
    config.mode = cli.mode;
    config.apply_env();
    if let Some(list) = &cli.kappa {
        config.kappas = parse_list(list).ok_or_else(|| {
            tpjc_cli::config::ConfigError::InvalidValue {
                key: "kappa".into(),
                value: list.clone(),
            }
        })?;
    }
    if let Some(list) = &cli.nbar {
        config.nbars = parse_list(list).ok_or_else(|| {
            tpjc_cli::config::ConfigError::InvalidValue {
                key: "nbar".into(),
                value: list.clone(),
            }
        })?;
    }
    if let Some(v) = cli.beta_diff {
        config.beta_diff = v;
    }
    if let Some(v) = cli.tmax {
        config.t_max = v;
    }
    if let Some(v) = cli.samples {
        config.samples = v;
    }
    if let Some(v) = cli.epsilon {
        config.epsilon = v;
    }
    if let Some(v) = &cli.out {
        config.out_dir = v.clone();
    }
    config.validate()?;
    Ok(config)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let config = match build_config(&cli) {
        Ok(config) => config,
        Err(err) => {
            eprintln!("configuration error: {err}");
            return ExitCode::from(2);
        }
    };
    match run(&config, cli.corrupt_kernel) {
        Ok(RunOutcome::Traces(paths)) => {
            println!("{} trace file(s) written", paths.len());
            ExitCode::SUCCESS
        }
        Ok(RunOutcome::Validation(report)) => {
            println!("{}", report.summary_line());
            if report.all_passed() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(RunError::Config(err)) => {
            eprintln!("configuration error: {err}");
            ExitCode::from(2)
        }
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(1)
        }
    }
}
