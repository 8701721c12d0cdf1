//! Error types shared across the crate.

use thiserror::Error;

/// Errors raised by parameter construction, truncation control, and the
/// numerical propagators.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// The intermediate-level detuning Δ is zero; the effective two-photon
    /// couplings β_i = λ_i²/Δ and λ = λ₁λ₂/Δ are undefined.
    #[error("intermediate detuning is zero; effective couplings are undefined")]
    ZeroIntermediateDetuning,

    /// δ = β₂ makes Ω = β₁β₂/(δ − β₂) singular.
    #[error("delta ({delta}) equals beta2 ({beta2}); dispersive shift is singular")]
    OmegaSingular { delta: f64, beta2: f64 },

    /// Cavity damping must be non-negative.
    #[error("cavity damping constant must be >= 0, got {0}")]
    NegativeKappa(f64),

    /// Mean photon number must be non-negative.
    #[error("mean photon number must be >= 0, got {0}")]
    NegativeMeanPhotonNumber(f64),

    /// The requested Fock truncation leaves too much probability outside.
    #[error("truncated probability mass {tail:.3e} exceeds ceiling {ceiling:.3e}")]
    Truncation { tail: f64, ceiling: f64 },

    /// Fock truncation must retain at least one level.
    #[error("Fock truncation must retain at least one level")]
    EmptyTruncation,

    /// Operation needs the raw couplings (λ₁, λ₂, Δ), absent in
    /// dimensionless parameter sets.
    #[error("operation requires raw couplings; parameters were built in dimensionless mode")]
    MissingRawCouplings,

    /// Operation needs the two-photon detuning δ, absent in dimensionless
    /// parameter sets unless supplied explicitly.
    #[error("operation requires the detuning delta; not present in these parameters")]
    MissingDetuning,

    /// Dispersive-limit condition violated beyond the configured threshold.
    #[error("dispersive condition violated: worst ratio {worst_ratio:.3e} >= threshold {threshold:.3e}")]
    DispersiveInvalid { worst_ratio: f64, threshold: f64 },

    /// Dispersive-report threshold must lie in (0, 1).
    #[error("dispersive threshold must lie in (0, 1), got {0}")]
    InvalidThreshold(f64),

    /// A density matrix failed its Hermiticity check.
    #[error("matrix is not Hermitian: max asymmetry {max_asymmetry:.3e} > {tolerance:.3e}")]
    NotHermitian { max_asymmetry: f64, tolerance: f64 },

    /// A density matrix has a significantly negative diagonal entry.
    #[error("diagonal entry {value:.3e} below floor {floor:.3e}")]
    NegativeDiagonal { value: f64, floor: f64 },

    /// Matrix dimensions disagree with the declared truncation.
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    /// Integrator step size must be positive.
    #[error("integrator step must be > 0, got {0}")]
    NonPositiveStep(f64),

    /// Step-halving convergence gate failed.
    #[error("step-halving gate failed: max element change {max_diff:.3e} > {tolerance:.3e}; reduce the step")]
    StepConvergence { max_diff: f64, tolerance: f64 },

    /// Trace drifted along an integration beyond the allowed budget.
    #[error("trace drifted by {drift:.3e} (budget {budget:.3e}) during propagation")]
    TraceDrift { drift: f64, budget: f64 },

    /// The lossless reference evolution only exists at κ = 0.
    #[error("unitary reference requires kappa = 0, got {0}")]
    NonzeroKappa(f64),
}

pub type Result<T> = std::result::Result<T, Error>;
