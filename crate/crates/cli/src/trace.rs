//! Entropy trace computation and the CSV contract.
//!
//! A trace is the time series (Ωt, S_f, Tr ρ_F, tail bound, |⟨a⟩|) on a
//! uniform grid. The CSV body is deterministic: `#`-prefixed metadata lines
//! (the `generated_at` stamp is the only non-reproducible one), one header
//! line, then rows with 17 significant digits so doubles round-trip.

use std::io::Write;
use std::path::Path;

use rayon::prelude::*;

use tpjc_core::fock::choose_truncation;
use tpjc_core::liouville::{amplitude_moment, field_state, linear_entropy};
use tpjc_core::params::{DimensionlessInputs, ModelParams};

use crate::runner::RunError;

/// Columns of every trace row.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TraceRow {
    pub omega_t: f64,
    pub s_f: f64,
    pub trace: f64,
    pub tail: f64,
    pub abs_a1: f64,
}

/// Parameter echo carried in the CSV header.
#[derive(Debug, Clone)]
pub struct TraceMeta {
    pub label: String,
    pub kappa: f64,
    pub nbar: f64,
    pub beta_diff: f64,
    pub beta1: f64,
    pub t_max: f64,
    pub samples: usize,
    pub epsilon: f64,
    pub dim: usize,
}

/// A computed trace plus its provenance.
#[derive(Debug, Clone)]
pub struct EntropyTrace {
    pub meta: TraceMeta,
    pub rows: Vec<TraceRow>,
}

/// Build the dimensionless parameter set a trace runs on.
pub fn trace_params(kappa: f64, nbar: f64, beta_diff: f64) -> Result<ModelParams, RunError> {
    Ok(ModelParams::from_dimensionless(&DimensionlessInputs {
        kappa,
        beta_diff,
        beta1: 0.0,
        nbar,
        detuning: None,
    })?)
}

/// Compute one trace on the uniform grid Ωt ∈ [0, t_max].
pub fn compute_trace(
    label: &str,
    kappa: f64,
    nbar: f64,
    beta_diff: f64,
    t_max: f64,
    samples: usize,
    epsilon: f64,
) -> Result<EntropyTrace, RunError> {
    let params = trace_params(kappa, nbar, beta_diff)?;
    let dim = choose_truncation(params.alpha, t_max, epsilon) + 1;
    let rows: Result<Vec<TraceRow>, RunError> = (0..samples)
        .into_par_iter()
        .map(|i| {
            let omega_t = t_max * i as f64 / (samples - 1) as f64;
            let rho = field_state(&params, omega_t, dim)?;
            let s_f = linear_entropy(&params, omega_t, dim)?;
            let row = TraceRow {
                omega_t,
                s_f,
                trace: rho.trace(),
                tail: rho.tail_bound(),
                abs_a1: amplitude_moment(&params, 1, omega_t).norm(),
            };
            check_row(&row)?;
            Ok(row)
        })
        .collect();
    Ok(EntropyTrace {
        meta: TraceMeta {
            label: label.to_string(),
            kappa,
            nbar,
            beta_diff,
            beta1: 0.0,
            t_max,
            samples,
            epsilon,
            dim,
        },
        rows: rows?,
    })
}

/// Emitted-row contract: entropy inside [0, 1) up to rounding noise, trace
/// within the truncation tail of unity.
fn check_row(row: &TraceRow) -> Result<(), RunError> {
    let s_ok = row.s_f > -1e-12 && row.s_f < 1.0;
    let tr_ok = (row.trace - 1.0).abs() <= row.tail + 1e-9;
    if s_ok && tr_ok {
        Ok(())
    } else {
        Err(RunError::RowInvariant {
            omega_t: row.omega_t,
            s_f: row.s_f,
            trace: row.trace,
        })
    }
}

impl EntropyTrace {
    /// Strict interior local maxima of S_f on the grid.
    pub fn local_maxima_count(&self) -> usize {
        self.rows
            .windows(3)
            .filter(|w| w[1].s_f > w[0].s_f && w[1].s_f > w[2].s_f)
            .count()
    }

    /// Metadata header lines, excluding the volatile `generated_at` stamp.
    fn stable_header(&self) -> String {
        let m = &self.meta;
        let mut h = String::new();
        h.push_str("# two-photon JCM field entropy trace\n");
        h.push_str(&format!("# version: {}\n", env!("CARGO_PKG_VERSION")));
        h.push_str(&format!("# label: {}\n", m.label));
        h.push_str(&format!("# kappa_over_omega: {}\n", fmt(m.kappa)));
        h.push_str(&format!("# nbar: {}\n", fmt(m.nbar)));
        h.push_str(&format!("# beta_diff_over_omega: {}\n", fmt(m.beta_diff)));
        h.push_str(&format!("# beta1_over_omega: {}\n", fmt(m.beta1)));
        h.push_str(&format!("# t_max_omega: {}\n", fmt(m.t_max)));
        h.push_str(&format!("# samples: {}\n", m.samples));
        h.push_str(&format!("# epsilon: {}\n", fmt(m.epsilon)));
        h.push_str(&format!("# truncation_dim: {}\n", m.dim));
        h.push_str(&format!("# local_maxima: {}\n", self.local_maxima_count()));
        h
    }

    /// Deterministic part of the file: stable header + column line + rows.
    pub fn body_string(&self) -> String {
        let mut s = self.stable_header();
        s.push_str("omega_t,s_f,trace,tail,abs_a1\n");
        for r in &self.rows {
            s.push_str(&format!(
                "{},{},{},{},{}\n",
                fmt(r.omega_t),
                fmt(r.s_f),
                fmt(r.trace),
                fmt(r.tail),
                fmt(r.abs_a1)
            ));
        }
        s
    }

    pub fn write_csv(&self, path: &Path) -> std::io::Result<()> {
        let stamp = std::time::SystemTime::now()
            .duration_since(std::time::UNIX_EPOCH)
            .map(|d| d.as_secs())
            .unwrap_or(0);
        let mut file = std::fs::File::create(path)?;
        // The stamp line sits first so body comparisons can skip one line.
        writeln!(file, "# generated_at: {stamp}")?;
        file.write_all(self.body_string().as_bytes())?;
        Ok(())
    }
}

/// 17 significant digits: lossless f64 round-trip, byte-stable output.
fn fmt(x: f64) -> String {
    format!("{x:.16e}")
}
