//! Exact block spectrum and its dispersive limit.
//!
//! The two-photon coupling leaves the subspace spanned by |e, n⟩ and
//! |g, n+2⟩ invariant, so the full Hamiltonian splits into 2×2 blocks
//!
//! ```text
//!   [ ωn + ω₀/2 + β₂n              λ√((n+1)(n+2))               ]
//!   [ λ√((n+1)(n+2))               ωn + ω₀/2 + δ + β₁(n+2)      ]
//! ```
//!
//! with δ = 2ω − ω₀. When β₁(n+2) ≪ |δ−β₂| and β₂(n+1) ≪ |δ−β₂| for every
//! populated n, the coupling acts only through the photon-number dependent
//! shift Ω(n+1)(n+2) and the spectrum is captured by an atom-diagonal
//! effective Hamiltonian.

use crate::error::{Error, Result};
use crate::params::ModelParams;

/// Default cutoff for the dispersive-validity ratios ("much less than one"
/// pinned to one order of magnitude).
pub const DEFAULT_DISPERSIVE_THRESHOLD: f64 = 0.1;

/// Atomic level label.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AtomLevel {
    Excited,
    Ground,
}

/// One invariant 2×2 block of the Hamiltonian on span{|e,n⟩, |g,n+2⟩}.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BlockHamiltonian {
    /// Photon index of the block.
    pub n: usize,
    /// ⟨e,n|H|e,n⟩ = ωn + ω₀/2 + β₂n.
    pub h11: f64,
    /// ⟨g,n+2|H|g,n+2⟩ = ωn + ω₀/2 + δ + β₁(n+2).
    pub h22: f64,
    /// Off-diagonal coupling λ√((n+1)(n+2)); the block is symmetric.
    pub h12: f64,
}

impl BlockHamiltonian {
    pub fn trace(&self) -> f64 {
        self.h11 + self.h22
    }

    pub fn det(&self) -> f64 {
        self.h11 * self.h22 - self.h12 * self.h12
    }
}

/// Build the invariant block at photon index `n`. Requires raw-mode
/// parameters (the block needs δ and λ).
pub fn block_hamiltonian(params: &ModelParams, n: usize) -> Result<BlockHamiltonian> {
    let delta = params.detuning_or_err()?;
    let lambda = params.raw_or_err()?.lambda_eff;
    let nf = n as f64;
    let base = params.omega * nf + 0.5 * params.omega0;
    Ok(BlockHamiltonian {
        n,
        h11: base + params.beta2 * nf,
        h22: base + delta + params.beta1 * (nf + 2.0),
        h12: lambda * ((nf + 1.0) * (nf + 2.0)).sqrt(),
    })
}

/// Exact eigenvalues of a block:
///
/// ```text
///   E± = ωn + ω₀/2 + [β₂n + δ + β₁(n+2)]/2
///        ± ½√([β₁(n+2) − β₂(n+1) + β₂ + δ]² + 4λ²(n+1)(n+2))
/// ```
///
/// `E₊` is the root continuously connected to the |e, n⟩ level as λ → 0;
/// at exact degeneracy (h11 = h22) the upper root is returned as E₊.
pub fn exact_eigenvalues(block: &BlockHamiltonian) -> (f64, f64) {
    let mean = 0.5 * (block.h11 + block.h22);
    let half_gap = 0.5 * f64::hypot(block.h11 - block.h22, 2.0 * block.h12);
    if block.h11 >= block.h22 {
        (mean + half_gap, mean - half_gap)
    } else {
        (mean - half_gap, mean + half_gap)
    }
}

/// Dispersive-regime validity report over photon indices 0..=n_max.
#[derive(Debug, Clone)]
pub struct DispersiveReport {
    /// Largest photon index checked.
    pub n_max: usize,
    /// (|β₁|(n+2)/|δ−β₂|, |β₂|(n+1)/|δ−β₂|) for each n.
    pub ratios: Vec<(f64, f64)>,
    /// Cutoff the ratios are compared against.
    pub threshold: f64,
    /// True iff every ratio is below the threshold.
    pub valid: bool,
}

impl DispersiveReport {
    /// Largest ratio encountered.
    pub fn worst_ratio(&self) -> f64 {
        self.ratios
            .iter()
            .map(|(a, b)| a.max(*b))
            .fold(0.0, f64::max)
    }
}

/// Evaluate the dispersive smallness ratios for all n ≤ n_max.
pub fn dispersive_report(
    params: &ModelParams,
    n_max: usize,
    threshold: f64,
) -> Result<DispersiveReport> {
    if !(threshold > 0.0 && threshold < 1.0) {
        return Err(Error::InvalidThreshold(threshold));
    }
    let delta = params.detuning_or_err()?;
    let scale = (delta - params.beta2).abs();
    if scale == 0.0 {
        return Err(Error::OmegaSingular { delta, beta2: params.beta2 });
    }
    let ratios: Vec<(f64, f64)> = (0..=n_max)
        .map(|n| {
            let nf = n as f64;
            (
                (params.beta1 * (nf + 2.0)).abs() / scale,
                (params.beta2 * (nf + 1.0)).abs() / scale,
            )
        })
        .collect();
    let valid = ratios.iter().all(|(a, b)| *a < threshold && *b < threshold);
    Ok(DispersiveReport { n_max, ratios, threshold, valid })
}

/// Perturbative block eigenvalues in the dispersive regime:
///
/// ```text
///   E₊ = ωn + ω₀/2 + β₂n + Ω(n+1)(n+2)
///   E₋ = ωn + ω₀/2 + δ + β₁(n+2) − Ω(n+1)(n+2)
/// ```
///
/// Errors unless the validity ratios at this n clear the default threshold.
pub fn dispersive_eigenvalues(params: &ModelParams, n: usize) -> Result<(f64, f64)> {
    let report = dispersive_report(params, n, DEFAULT_DISPERSIVE_THRESHOLD)?;
    if !report.valid {
        return Err(Error::DispersiveInvalid {
            worst_ratio: report.worst_ratio(),
            threshold: report.threshold,
        });
    }
    let delta = params.detuning_or_err()?;
    let nf = n as f64;
    let base = params.omega * nf + 0.5 * params.omega0;
    let shift = params.omega_shift * (nf + 1.0) * (nf + 2.0);
    let e_plus = base + params.beta2 * nf + shift;
    let e_minus = base + delta + params.beta1 * (nf + 2.0) - shift;
    Ok((e_plus, e_minus))
}

/// Diagonal matrix element of the effective Hamiltonian on |level, n⟩:
/// ωn + ω₀/2 + β₂n + Ω(n+1)(n+2) for `e`, ωn − ω₀/2 + β₁n − Ωn(n−1) for `g`.
pub fn effective_diagonal(params: &ModelParams, n: usize, level: AtomLevel) -> f64 {
    let nf = n as f64;
    match level {
        AtomLevel::Excited => params.omega * nf + 0.5 * params.omega0 + params.h_int_excited(n),
        AtomLevel::Ground => params.omega * nf - 0.5 * params.omega0 + params.h_int_ground(n),
    }
}
