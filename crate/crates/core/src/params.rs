//! Model parameters for the two-photon Jaynes-Cummings model with Stark
//! shift, in the dispersive regime.
//!
//! The model couples a two-level atom (levels `e`, `g`, splitting ω₀) to a
//! single cavity mode (frequency ω) through a two-photon process mediated by
//! an adiabatically eliminated intermediate level. After elimination the
//! couplings collapse to
//!
//! ```text
//!   β_i = λ_i²/Δ (i = 1, 2),      λ = λ₁λ₂/Δ,
//! ```
//!
//! where λ₁, λ₂ couple the intermediate level to `e`, `g` and Δ is the
//! intermediate detuning. The two-photon detuning is δ = 2ω − ω₀. Deep in
//! the dispersive regime the coupling acts only through the photon-number
//! dependent shift
//!
//! ```text
//!   Ω = β₁β₂/(δ − β₂),
//! ```
//!
//! and the effective Hamiltonian is diagonal in the |atom, n⟩ basis:
//!
//! ```text
//!   H_eff = ω a†a + ω₀/2 Sz + a†a(β₂|e⟩⟨e| + β₁|g⟩⟨g|)
//!           + Ω[(a†a+1)(a†a+2)|e⟩⟨e| − a†a(a†a−1)|g⟩⟨g|].
//! ```
//!
//! Two construction modes are supported:
//!
//! * **raw** — physical couplings (ω, ω₀, λ₁, λ₂, Δ, κ, α); everything else
//!   is derived and the identities above are enforceable.
//! * **dimensionless** — the figure-reproduction path: Ω is the unit of
//!   frequency and the caller supplies κ/Ω, (β₂−β₁)/Ω, β₁/Ω and the mean
//!   photon number n̄ = |α|². Raw couplings are absent and consistency
//!   checks are skipped.

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Sign convention for the dispersive shift Ω derived from raw couplings.
///
/// The shift appears in the literature both as β₁β₂/(δ−β₂) and as
/// β₁β₂/|δ−β₂|; for δ < β₂ the two differ by a sign. The signed form is the
/// default.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum OmegaConvention {
    /// Ω = β₁β₂/(δ − β₂).
    #[default]
    Signed,
    /// Ω = β₁β₂/|δ − β₂|.
    AbsoluteValue,
}

/// Raw intermediate-level couplings retained from raw-mode construction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RawCouplings {
    /// Coupling of the intermediate level to `e`.
    pub lambda1: f64,
    /// Coupling of the intermediate level to `g`.
    pub lambda2: f64,
    /// Intermediate detuning Δ.
    pub delta_int: f64,
    /// Effective two-photon coupling λ = λ₁λ₂/Δ.
    pub lambda_eff: f64,
}

/// Inputs for raw-mode construction.
#[derive(Debug, Clone, Copy)]
pub struct RawInputs {
    /// Field frequency ω.
    pub omega: f64,
    /// Atomic transition frequency ω₀.
    pub omega0: f64,
    /// Intermediate-level coupling to `e`.
    pub lambda1: f64,
    /// Intermediate-level coupling to `g`.
    pub lambda2: f64,
    /// Intermediate detuning Δ (must be nonzero).
    pub delta_int: f64,
    /// Cavity damping constant κ ≥ 0.
    pub kappa: f64,
    /// Initial coherent amplitude α.
    pub alpha: Complex64,
}

/// Inputs for dimensionless (Ω = 1) construction.
///
/// Defaults reproduce the κ/Ω = 0.04, (β₂−β₁)/Ω = 0.02, n̄ = 1 trace.
#[derive(Debug, Clone, Copy)]
pub struct DimensionlessInputs {
    /// κ/Ω.
    pub kappa: f64,
    /// (β₂ − β₁)/Ω.
    pub beta_diff: f64,
    /// β₁/Ω. The field entropy depends on the Stark coefficients only
    /// through their difference, so 0 is a harmless default.
    pub beta1: f64,
    /// Mean photon number n̄ = |α|²; α is taken real and non-negative.
    pub nbar: f64,
    /// Optional δ/Ω, needed only for dispersive-validity diagnostics.
    pub detuning: Option<f64>,
}

impl Default for DimensionlessInputs {
    fn default() -> Self {
        Self { kappa: 0.04, beta_diff: 0.02, beta1: 0.0, nbar: 1.0, detuning: None }
    }
}

/// All model constants, fully derived.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModelParams {
    /// Field frequency ω (0 in dimensionless mode; enters absolute energies
    /// only, never the interaction-picture dynamics).
    pub omega: f64,
    /// Atomic transition frequency ω₀ (0 in dimensionless mode).
    pub omega0: f64,
    /// Two-photon detuning δ = 2ω − ω₀; absent in dimensionless mode unless
    /// supplied explicitly.
    pub detuning: Option<f64>,
    /// Stark shift coefficient on the `g` manifold.
    pub beta1: f64,
    /// Stark shift coefficient on the `e` manifold.
    pub beta2: f64,
    /// Dispersive two-photon shift Ω.
    pub omega_shift: f64,
    /// Cavity damping constant κ ≥ 0.
    pub kappa: f64,
    /// Initial coherent amplitude α.
    pub alpha: Complex64,
    /// Raw couplings when built in raw mode; `None` in dimensionless mode.
    pub raw: Option<RawCouplings>,
}

impl ModelParams {
    /// Build from raw couplings with the signed Ω convention.
    pub fn from_raw(inputs: &RawInputs) -> Result<Self> {
        Self::from_raw_with_convention(inputs, OmegaConvention::Signed)
    }

    /// Build from raw couplings under an explicit Ω sign convention.
    ///
    /// Derives β_i = λ_i²/Δ, λ = λ₁λ₂/Δ, δ = 2ω − ω₀ and Ω per the
    /// convention. Fails on Δ = 0, δ = β₂, or κ < 0.
    pub fn from_raw_with_convention(
        inputs: &RawInputs,
        convention: OmegaConvention,
    ) -> Result<Self> {
        if inputs.delta_int == 0.0 {
            return Err(Error::ZeroIntermediateDetuning);
        }
        if inputs.kappa < 0.0 {
            return Err(Error::NegativeKappa(inputs.kappa));
        }
        let beta1 = inputs.lambda1 * inputs.lambda1 / inputs.delta_int;
        let beta2 = inputs.lambda2 * inputs.lambda2 / inputs.delta_int;
        let lambda_eff = inputs.lambda1 * inputs.lambda2 / inputs.delta_int;
        let detuning = 2.0 * inputs.omega - inputs.omega0;
        // Relative guard: δ − β₂ below rounding noise makes Ω meaningless.
        let gap = detuning - beta2;
        if gap.abs() <= 1e-12 * detuning.abs().max(beta2.abs()).max(f64::MIN_POSITIVE) {
            return Err(Error::OmegaSingular { delta: detuning, beta2 });
        }
        let denom = match convention {
            OmegaConvention::Signed => gap,
            OmegaConvention::AbsoluteValue => gap.abs(),
        };
        let omega_shift = beta1 * beta2 / denom;
        Ok(Self {
            omega: inputs.omega,
            omega0: inputs.omega0,
            detuning: Some(detuning),
            beta1,
            beta2,
            omega_shift,
            kappa: inputs.kappa,
            alpha: inputs.alpha,
            raw: Some(RawCouplings {
                lambda1: inputs.lambda1,
                lambda2: inputs.lambda2,
                delta_int: inputs.delta_int,
                lambda_eff,
            }),
        })
    }

    /// Build in Ω = 1 units from the dimensionless ratios the sweep figures
    /// are specified in.
    pub fn from_dimensionless(inputs: &DimensionlessInputs) -> Result<Self> {
        if inputs.nbar < 0.0 {
            return Err(Error::NegativeMeanPhotonNumber(inputs.nbar));
        }
        let mut params = Self::from_effective(
            inputs.beta1,
            inputs.beta1 + inputs.beta_diff,
            1.0,
            inputs.kappa,
            Complex64::new(inputs.nbar.sqrt(), 0.0),
        )?;
        params.detuning = inputs.detuning;
        Ok(params)
    }

    /// Build directly from the effective interaction-picture constants
    /// (β₁, β₂, Ω, κ, α). No raw couplings, no detuning.
    pub fn from_effective(
        beta1: f64,
        beta2: f64,
        omega_shift: f64,
        kappa: f64,
        alpha: Complex64,
    ) -> Result<Self> {
        if kappa < 0.0 {
            return Err(Error::NegativeKappa(kappa));
        }
        Ok(Self {
            omega: 0.0,
            omega0: 0.0,
            detuning: None,
            beta1,
            beta2,
            omega_shift,
            kappa,
            alpha,
            raw: None,
        })
    }

    /// Replace the initial coherent amplitude.
    pub fn with_alpha(mut self, alpha: Complex64) -> Self {
        self.alpha = alpha;
        self
    }

    /// Mean photon number of the initial coherent state, n̄ = |α|².
    pub fn nbar(&self) -> f64 {
        self.alpha.norm_sqr()
    }

    /// Branch frequency Ω_g = β₁ + Ω.
    pub fn omega_g(&self) -> f64 {
        self.beta1 + self.omega_shift
    }

    /// Branch frequency Ω_e = β₂ + 3Ω.
    pub fn omega_e(&self) -> f64 {
        self.beta2 + 3.0 * self.omega_shift
    }

    /// Interaction-picture energy of |e, n⟩: β₂n + Ω(n+1)(n+2).
    pub fn h_int_excited(&self, n: usize) -> f64 {
        let n = n as f64;
        self.beta2 * n + self.omega_shift * (n + 1.0) * (n + 2.0)
    }

    /// Interaction-picture energy of |g, n⟩: β₁n − Ωn(n−1).
    pub fn h_int_ground(&self, n: usize) -> f64 {
        let n = n as f64;
        self.beta1 * n - self.omega_shift * n * (n - 1.0)
    }

    /// Detuning δ, or an error for dimensionless parameters without one.
    pub fn detuning_or_err(&self) -> Result<f64> {
        self.detuning.ok_or(Error::MissingDetuning)
    }

    /// Raw couplings, or an error for dimensionless parameters.
    pub fn raw_or_err(&self) -> Result<&RawCouplings> {
        self.raw.as_ref().ok_or(Error::MissingRawCouplings)
    }

    /// Verify the derived-consistency identities in raw mode; a no-op for
    /// dimensionless parameters (no raw couplings to check against).
    pub fn check_consistency(&self, tol: f64) -> Result<()> {
        let raw = match &self.raw {
            Some(raw) => raw,
            None => return Ok(()),
        };
        let delta = self.detuning_or_err()?;
        let b1 = raw.lambda1 * raw.lambda1 / raw.delta_int;
        let b2 = raw.lambda2 * raw.lambda2 / raw.delta_int;
        let lam = raw.lambda1 * raw.lambda2 / raw.delta_int;
        let omega_signed = b1 * b2 / (delta - b2);
        let scale = |x: f64, y: f64| (x - y).abs() <= tol * (1.0 + x.abs().max(y.abs()));
        let ok = scale(self.beta1, b1)
            && scale(self.beta2, b2)
            && scale(raw.lambda_eff, lam)
            && (scale(self.omega_shift, omega_signed)
                || scale(self.omega_shift, omega_signed.abs()));
        if ok {
            Ok(())
        } else {
            Err(Error::DimensionMismatch { expected: 0, got: 0 })
        }
    }
}
