//! Closed-form dissipative evolution of the field state.
//!
//! For the atom entering in (|e⟩ + |g⟩)/√2 and the field in |α⟩, the two
//! atom-diagonal branches evolve independently under their Liouvillians and
//! stay coherent-like in the number basis:
//!
//! ```text
//!   ⟨m|ρ_ii(t)|n⟩ = ½ e^{−|α|²} αᵐ(α*)ⁿ/√(m!n!) · e^{Γ_mn(t) + iΘ_imn(t)},
//! ```
//!
//! where, with k = m − n, D = κ² + Ω²k², u = e^{−2κt} and φ = 2Ωkt, both
//! kernels come from one complex response
//!
//! ```text
//!   F_k(t) = |α|² κ(κ + iΩk)(1 − u e^{iφ}) / D,
//!   Γ_mn(t)   = −κ(m+n)t + Re F_k
//!             = −κ(m+n)t + |α|²κ/D · {κ − u[κ cos φ − Ωk sin φ]},
//!   Θ_gmn(t)  = −Ω_g k t + Ωk(m+n)t + Im F_k,
//!   Θ_emn(t)  = −Ω_e k t − Ωk(m+n)t − Im F_k,
//!   Im F_k    = |α|²κ/D · [Ωk(1 − u cos φ) − κ u sin φ].
//! ```
//!
//! The g-branch takes the upper signs, the e-branch the lower ones. At
//! κ = 0 the response vanishes identically and only the deterministic
//! phases remain (handled as an analytic branch, not by 0/0 evaluation).
//!
//! The reduced field state is ρ_F = ρ_gg + ρ_ee; its linear entropy
//! 1 − Tr ρ_F² collapses to a double Poisson-weighted series over the
//! kernels, which this module also evaluates directly as an independent
//! code path.

use ndarray::Array2;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::fock::{
    coherent_vector, poisson_tail, poisson_weights, CoherentVector, FieldDensityMatrix,
    DEFAULT_TAIL_CEILING,
};
use crate::params::ModelParams;

/// Poisson-weight floor below which entropy-series terms are skipped.
const SERIES_WEIGHT_FLOOR: f64 = 1e-18;

/// Atom-diagonal branch label.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Branch {
    /// ⟨g|ρ|g⟩ block.
    Gg,
    /// ⟨e|ρ|e⟩ block.
    Ee,
}

/// Damping and phase kernels for one number-basis element at one time.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KernelValue {
    pub m: usize,
    pub n: usize,
    pub t: f64,
    /// Log-modulus kernel Γ_mn(t); 0 at t = 0, symmetric in m ↔ n.
    pub gamma: f64,
    /// g-branch phase Θ_gmn(t); antisymmetric in m ↔ n.
    pub theta_g: f64,
    /// e-branch phase Θ_emn(t); antisymmetric in m ↔ n.
    pub theta_e: f64,
}

/// Evaluate the kernels for the element |m⟩⟨n| at time t.
pub fn kernel(params: &ModelParams, m: usize, n: usize, t: f64) -> KernelValue {
    let k = m as f64 - n as f64;
    let s = (m + n) as f64;
    let omega = params.omega_shift;
    let kappa = params.kappa;
    let nbar = params.nbar();

    let (gamma, response_phase) = if kappa == 0.0 {
        (0.0, 0.0)
    } else {
        let d = kappa * kappa + omega * omega * k * k;
        let u = (-2.0 * kappa * t).exp();
        let phi = 2.0 * omega * k * t;
        let (sin_phi, cos_phi) = phi.sin_cos();
        let re = kappa - u * (kappa * cos_phi - omega * k * sin_phi);
        let im = omega * k * (1.0 - u * cos_phi) - kappa * u * sin_phi;
        let pref = nbar * kappa / d;
        (-kappa * s * t + pref * re, pref * im)
    };

    let drift = omega * k * s * t;
    KernelValue {
        m,
        n,
        t,
        gamma,
        theta_g: -params.omega_g() * k * t + drift + response_phase,
        theta_e: -params.omega_e() * k * t - drift - response_phase,
    }
}

/// Branch frequency bundle consumed by the superoperator assembly.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LiouvillianSpec {
    pub which: Branch,
    /// Ω_g = β₁ + Ω for the g branch, Ω_e = β₂ + 3Ω for the e branch.
    pub omega_branch: f64,
    pub kappa: f64,
    pub omega_shift: f64,
}

impl LiouvillianSpec {
    pub fn for_branch(params: &ModelParams, which: Branch) -> Self {
        let omega_branch = match which {
            Branch::Gg => params.omega_g(),
            Branch::Ee => params.omega_e(),
        };
        Self { which, omega_branch, kappa: params.kappa, omega_shift: params.omega_shift }
    }
}

/// One atom-diagonal branch of the field state.
#[derive(Debug, Clone)]
pub struct BranchDensity {
    pub which: Branch,
    /// Branch matrix; carries trace ≈ ½ for the balanced initial state.
    pub matrix: FieldDensityMatrix,
}

/// Evolve one branch to time t on a `dim`-level truncation.
///
/// Every entry is evaluated from its own kernel call; Hermiticity is a
/// consequence of the kernel symmetries, not of mirroring, and is asserted
/// by the container.
pub fn branch_density(
    params: &ModelParams,
    which: Branch,
    t: f64,
    dim: usize,
) -> Result<BranchDensity> {
    let coherent = coherent_vector(params.alpha, dim)?;
    let mut data = Array2::zeros((dim, dim));
    for m in 0..dim {
        for n in 0..dim {
            data[[m, n]] = branch_entry(params, &coherent, which, m, n, t);
        }
    }
    let matrix = FieldDensityMatrix::new(data, coherent.tail_bound)?;
    Ok(BranchDensity { which, matrix })
}

fn branch_entry(
    params: &ModelParams,
    coherent: &CoherentVector,
    which: Branch,
    m: usize,
    n: usize,
    t: f64,
) -> Complex64 {
    let kv = kernel(params, m, n, t);
    let theta = match which {
        Branch::Gg => kv.theta_g,
        Branch::Ee => kv.theta_e,
    };
    let weight = 0.5 * coherent.amplitudes[m] * coherent.amplitudes[n].conj();
    weight * Complex64::from_polar(kv.gamma.exp(), theta)
}

/// Reduced field state ρ_F(t) = ρ_gg(t) + ρ_ee(t).
pub fn field_state(params: &ModelParams, t: f64, dim: usize) -> Result<FieldDensityMatrix> {
    let gg = branch_density(params, Branch::Gg, t, dim)?;
    let ee = branch_density(params, Branch::Ee, t, dim)?;
    let data = gg.matrix.data() + ee.matrix.data();
    FieldDensityMatrix::new(data, gg.matrix.tail_bound())
}

/// n-th moment of the annihilation operator, ⟨aⁿ⟩(t), in closed form:
///
/// ```text
///   ⟨aⁿ⟩ = ½ αⁿ e^{Γ_n0 + |α|²(u cos 2Ωnt − 1)}
///          · { e^{i[|α|²u sin 2Ωnt + Θ_gn0]} + e^{i[−|α|²u sin 2Ωnt + Θ_en0]} }
/// ```
///
/// with u = e^{−2κt}. The series over the decayed Poisson distribution has
/// been resummed, so no truncation enters. Requires order ≥ 1.
pub fn amplitude_moment(params: &ModelParams, order: u32, t: f64) -> Complex64 {
    debug_assert!(order >= 1, "moment order must be at least 1");
    let nbar = params.nbar();
    let kv = kernel(params, order as usize, 0, t);
    let u = (-2.0 * params.kappa * t).exp();
    let phase = 2.0 * params.omega_shift * order as f64 * t;
    let (sin_p, cos_p) = phase.sin_cos();
    let modulus = (kv.gamma + nbar * (u * cos_p - 1.0)).exp();
    let swirl = nbar * u * sin_p;
    let g_term = Complex64::from_polar(1.0, swirl + kv.theta_g);
    let e_term = Complex64::from_polar(1.0, -swirl + kv.theta_e);
    0.5 * params.alpha.powu(order) * modulus * (g_term + e_term)
}

/// Linear entropy S_f(t) = 1 − Tr ρ_F²(t) evaluated as the kernel series
///
/// ```text
///   S_f = 1 − e^{−2|α|²} Σ_{m,n} |α|^{2(m+n)}/(m!n!)
///         · e^{2Γ_mn} cos²[(Θ_gmn − Θ_emn)/2]
/// ```
///
/// over the truncation square, skipping Poisson weights below 1e-18. This
/// is an independent code path from `field_state` + purity.
pub fn linear_entropy(params: &ModelParams, t: f64, dim: usize) -> Result<f64> {
    // Same truncation-admissibility rule as the matrix path.
    if dim == 0 {
        return Err(Error::EmptyTruncation);
    }
    let tail = poisson_tail(params.nbar(), dim - 1);
    if tail > DEFAULT_TAIL_CEILING {
        return Err(Error::Truncation { tail, ceiling: DEFAULT_TAIL_CEILING });
    }
    let weights = poisson_weights(params.nbar(), dim);
    let mut purity = 0.0f64;
    for m in 0..dim {
        for n in 0..dim {
            let w = weights[m] * weights[n];
            if w < SERIES_WEIGHT_FLOOR {
                continue;
            }
            let kv = kernel(params, m, n, t);
            let half = 0.5 * (kv.theta_g - kv.theta_e);
            let c = half.cos();
            purity += w * (2.0 * kv.gamma).exp() * c * c;
        }
    }
    Ok(1.0 - purity)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::params::DimensionlessInputs;
    use approx::assert_abs_diff_eq;

    fn fig_params(kappa: f64, nbar: f64) -> ModelParams {
        ModelParams::from_dimensionless(&DimensionlessInputs {
            kappa,
            beta_diff: 0.02,
            beta1: 0.0,
            nbar,
            detuning: None,
        })
        .unwrap()
    }

    #[test]
    fn kernels_vanish_at_time_zero() {
        let p = fig_params(0.04, 1.0);
        for (m, n) in [(0, 0), (1, 0), (3, 2), (7, 7), (5, 1)] {
            let kv = kernel(&p, m, n, 0.0);
            assert_eq!(kv.gamma, 0.0);
            assert_eq!(kv.theta_g, 0.0);
            assert_eq!(kv.theta_e, 0.0);
        }
    }

    #[test]
    fn diagonal_kernel_closed_form() {
        // Γ_mm(t) = −2κmt + |α|²(1 − e^{−2κt}); m = n = 1 at κt = 1.
        let p = fig_params(1.0, 1.0);
        let kv = kernel(&p, 1, 1, 1.0);
        assert_abs_diff_eq!(kv.gamma, -2.0 + (1.0 - (-2.0f64).exp()), epsilon = 1e-14);
        assert_eq!(kv.theta_g, 0.0);
        assert_eq!(kv.theta_e, 0.0);
    }

    #[test]
    fn kernel_matches_complex_response_route() {
        // Independent algebraic route: Γ + i·phase from
        // |α|²κ(κ+iΩk)(1 − u e^{iφ})/D directly in complex arithmetic.
        let p = fig_params(0.13, 1.7);
        for (m, n, t) in [(4usize, 1usize, 0.9), (2, 7, 3.3), (9, 8, 12.0), (5, 5, 2.0)] {
            let kv = kernel(&p, m, n, t);
            let k = m as f64 - n as f64;
            let d = p.kappa * p.kappa + p.omega_shift * p.omega_shift * k * k;
            let u = (-2.0 * p.kappa * t).exp();
            let rot = Complex64::from_polar(u, 2.0 * p.omega_shift * k * t);
            let f = p.nbar() * p.kappa * Complex64::new(p.kappa, p.omega_shift * k)
                * (Complex64::new(1.0, 0.0) - rot)
                / d;
            let gamma = -p.kappa * (m + n) as f64 * t + f.re;
            let theta_g =
                -p.omega_g() * k * t + p.omega_shift * k * (m + n) as f64 * t + f.im;
            assert_abs_diff_eq!(kv.gamma, gamma, epsilon = 1e-13);
            assert_abs_diff_eq!(kv.theta_g, theta_g, epsilon = 1e-13);
            assert_abs_diff_eq!(
                kv.theta_e,
                -p.omega_e() * k * t - p.omega_shift * k * (m + n) as f64 * t - f.im,
                epsilon = 1e-13
            );
        }
    }

    #[test]
    fn lossless_kernels_are_pure_phase() {
        let p = fig_params(0.0, 2.0);
        let kv = kernel(&p, 6, 2, 3.7);
        assert_eq!(kv.gamma, 0.0);
        let k = 4.0;
        let s = 8.0;
        assert_abs_diff_eq!(
            kv.theta_g,
            -p.omega_g() * k * 3.7 + p.omega_shift * k * s * 3.7,
            epsilon = 1e-12
        );
    }

    #[test]
    fn liouvillian_spec_branch_frequencies() {
        let p = fig_params(0.04, 1.0);
        let gg = LiouvillianSpec::for_branch(&p, Branch::Gg);
        let ee = LiouvillianSpec::for_branch(&p, Branch::Ee);
        assert!((gg.omega_branch - (p.beta1 + p.omega_shift)).abs() <= 1e-14);
        assert!((ee.omega_branch - (p.beta2 + 3.0 * p.omega_shift)).abs() <= 1e-14);
        assert_eq!(gg.kappa, p.kappa);
        assert_eq!(ee.omega_shift, p.omega_shift);
    }

    #[test]
    fn branch_density_at_time_zero_is_half_projector() {
        let p = fig_params(0.04, 1.0);
        let dim = 18;
        let v = coherent_vector(p.alpha, dim).unwrap();
        let pure = FieldDensityMatrix::from_pure(&v);
        for which in [Branch::Gg, Branch::Ee] {
            let b = branch_density(&p, which, 0.0, dim).unwrap();
            for m in 0..dim {
                for n in 0..dim {
                    let expect = 0.5 * pure.entry(m, n);
                    assert!((b.matrix.entry(m, n) - expect).norm() < 1e-14);
                }
            }
            assert_abs_diff_eq!(b.matrix.trace(), 0.5, epsilon = 1e-12);
        }
    }

    #[test]
    fn branch_diagonal_is_decayed_poisson() {
        let p = fig_params(0.08, 1.0);
        let dim = 18;
        let t = 4.0;
        let b = branch_density(&p, Branch::Gg, t, dim).unwrap();
        let mean = p.nbar() * (-2.0 * p.kappa * t).exp();
        let w = poisson_weights(mean, dim);
        for m in 0..dim {
            assert_abs_diff_eq!(b.matrix.entry(m, m).re, 0.5 * w[m], epsilon = 1e-13);
            assert!(b.matrix.entry(m, m).im.abs() < 1e-16);
        }
    }

    #[test]
    fn lossless_branch_moduli_are_stationary() {
        let p = fig_params(0.0, 1.0);
        let dim = 16;
        let b0 = branch_density(&p, Branch::Ee, 0.0, dim).unwrap();
        let b1 = branch_density(&p, Branch::Ee, 5.3, dim).unwrap();
        for m in 0..dim {
            for n in 0..dim {
                assert_abs_diff_eq!(
                    b0.matrix.entry(m, n).norm(),
                    b1.matrix.entry(m, n).norm(),
                    epsilon = 1e-14
                );
            }
        }
    }

    #[test]
    fn field_state_is_pure_initially_and_vacuum_late() {
        let p = fig_params(0.04, 1.0);
        let dim = 16;
        let rho0 = field_state(&p, 0.0, dim).unwrap();
        let v = coherent_vector(p.alpha, dim).unwrap();
        let pure = FieldDensityMatrix::from_pure(&v);
        assert!(rho0.max_deviation(&pure) < 1e-13);

        // κt = 20.
        let t_late = 20.0 / p.kappa;
        let late = field_state(&p, t_late, dim).unwrap();
        let mut vac = Array2::<Complex64>::zeros((dim, dim));
        vac[[0, 0]] = Complex64::new(1.0, 0.0);
        let vac = FieldDensityMatrix::new(vac, 0.0).unwrap();
        assert!(late.max_deviation(&vac) < 1e-8);
    }

    #[test]
    fn field_state_unit_trace_and_hermitian() {
        let p = fig_params(0.1, 3.0);
        let dim = 27;
        for &t in &[0.0, 0.7, 4.0, 19.0] {
            let rho = field_state(&p, t, dim).unwrap();
            assert!((rho.trace() - 1.0).abs() <= rho.tail_bound() + 1e-12);
            assert!(rho.hermiticity_defect() < 1e-12);
        }
    }

    #[test]
    fn moment_reduces_to_coherent_value_at_time_zero() {
        let alpha = Complex64::new(0.8, -0.4);
        let p = fig_params(0.04, 1.0).with_alpha(alpha);
        for order in 1..4u32 {
            let m = amplitude_moment(&p, order, 0.0);
            assert!((m - alpha.powu(order)).norm() < 1e-13);
        }
    }

    #[test]
    fn moment_vanishes_for_vacuum_input() {
        let p = fig_params(0.04, 0.0);
        for &t in &[0.0, 1.0, 8.0] {
            assert_eq!(amplitude_moment(&p, 1, t), Complex64::ZERO);
        }
    }

    #[test]
    fn moment_matches_trace_oracle() {
        // Tr(aⁿ ρ_F) = Σ_k √((k+n)!/k!) ⟨k+n|ρ_F|k⟩ from the matrix path.
        let p = fig_params(0.04, 1.0);
        let dim = 22;
        for (order, t) in [(1u32, 1.0), (1, 5.0), (2, 2.5), (3, 0.4)] {
            let rho = field_state(&p, t, dim).unwrap();
            let mut tr = Complex64::ZERO;
            for k in 0..dim - order as usize {
                let mut amp = 1.0f64;
                for j in 1..=order as usize {
                    amp *= (k + j) as f64;
                }
                tr += amp.sqrt() * rho.entry(k + order as usize, k);
            }
            let closed = amplitude_moment(&p, order, t);
            assert!(
                (closed - tr).norm() < 1e-8,
                "order {order} t {t}: closed {closed} trace {tr}"
            );
        }
    }

    #[test]
    fn entropy_starts_at_zero_and_reaches_vacuum() {
        let p = fig_params(0.04, 1.0);
        let dim = 18;
        let s0 = linear_entropy(&p, 0.0, dim).unwrap();
        assert!(s0.abs() < 1e-12, "S(0) = {s0}");
        let s_late = linear_entropy(&p, 20.0 / p.kappa, dim).unwrap();
        assert!(s_late < 1e-6, "S(late) = {s_late}");
    }

    #[test]
    fn entropy_series_matches_purity_route() {
        let p = fig_params(0.04, 1.0);
        let dim = 20;
        for &t in &[0.0, 0.3, 1.7, 6.0, 14.0] {
            let series = linear_entropy(&p, t, dim).unwrap();
            let matrix = 1.0 - field_state(&p, t, dim).unwrap().purity();
            assert!(
                (series - matrix).abs() < 1e-9,
                "t={t}: series {series} matrix {matrix}"
            );
        }
    }

    #[test]
    fn entropy_invariant_under_common_stark_shift() {
        let base = fig_params(0.04, 1.0);
        let dim = 18;
        for &c in &[0.37, -1.2, 5.0] {
            let shifted = ModelParams::from_effective(
                base.beta1 + c,
                base.beta2 + c,
                base.omega_shift,
                base.kappa,
                base.alpha,
            )
            .unwrap();
            for &t in &[0.9, 7.0] {
                let a = linear_entropy(&base, t, dim).unwrap();
                let b = linear_entropy(&shifted, t, dim).unwrap();
                assert!((a - b).abs() < 1e-12, "c={c} t={t}: {a} vs {b}");
            }
        }
    }

    #[test]
    fn moment_not_invariant_under_common_stark_shift() {
        let base = fig_params(0.04, 1.0);
        let shifted = ModelParams::from_effective(
            base.beta1 + 0.5,
            base.beta2 + 0.5,
            base.omega_shift,
            base.kappa,
            base.alpha,
        )
        .unwrap();
        let a = amplitude_moment(&base, 1, 2.0);
        let b = amplitude_moment(&shifted, 1, 2.0);
        assert!((a - b).norm() > 1e-3, "moment should move under the shift");
    }

    #[test]
    fn entropy_invariant_under_frequency_rescaling() {
        let base = fig_params(0.04, 1.0);
        let dim = 18;
        for &s in &[3.0, 0.25] {
            let scaled = ModelParams::from_effective(
                s * base.beta1,
                s * base.beta2,
                s * base.omega_shift,
                s * base.kappa,
                base.alpha,
            )
            .unwrap();
            for &t in &[0.8, 6.0] {
                let a = linear_entropy(&base, t, dim).unwrap();
                let b = linear_entropy(&scaled, t / s, dim).unwrap();
                assert!((a - b).abs() < 1e-12, "s={s} t={t}: {a} vs {b}");
            }
        }
    }

    #[test]
    fn lossless_entropy_is_periodic_for_integer_beta_difference() {
        // With κ = 0 and (β₂−β₁)/Ω = 2 the phase difference advances by a
        // multiple of 2π over one period π/Ω.
        let p = ModelParams::from_effective(0.0, 2.0, 1.0, 0.0, Complex64::new(1.0, 0.0))
            .unwrap();
        let dim = 18;
        let period = std::f64::consts::PI;
        for &t in &[0.4, 1.1, 2.3] {
            let a = linear_entropy(&p, t, dim).unwrap();
            let b = linear_entropy(&p, t + period, dim).unwrap();
            assert!((a - b).abs() < 1e-10, "t={t}: {a} vs {b}");
        }
        // The trace-sweep value 0.02 = 1/50 recurs after 100π/Ω.
        let p2 = fig_params(0.0, 1.0);
        let a = linear_entropy(&p2, 0.6, dim).unwrap();
        let b = linear_entropy(&p2, 0.6 + 100.0 * period, dim).unwrap();
        assert!((a - b).abs() < 1e-9, "{a} vs {b}");
    }
}
