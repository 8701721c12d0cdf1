//! Experiment harness for the dissipative two-photon Jaynes-Cummings field
//! dynamics: reproduces the damping and intensity entropy sweeps as CSV
//! traces and runs the oracle-validation suite.

pub mod config;
pub mod runner;
pub mod trace;
pub mod validate;

pub use config::{Mode, SweepConfig, OUT_DIR_ENV};
pub use runner::{run, run_custom, run_fig1, run_fig2, RunError, RunOutcome};
pub use trace::{compute_trace, EntropyTrace, TraceRow};
pub use validate::{run_validation, ValidationReport};
