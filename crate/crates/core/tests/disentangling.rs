//! The kernel evolution must agree with a direct matrix exponential of the
//! branch Liouvillians on a small truncation. This is the arbiter for the
//! closed-form kernels: the exponential knows nothing about them, only
//! about the superoperator algebra.

use ndarray::Array2;
use num_complex::Complex64;
use tpjc_core::fock::coherent_vector;
use tpjc_core::linalg::expm;
use tpjc_core::liouville::{branch_density, Branch, LiouvillianSpec};
use tpjc_core::params::ModelParams;
use tpjc_core::superop::{liouvillian_matrix, vec_index};

/// exp(L t) applied to the vectorized initial branch ½|α⟩⟨α|.
fn exponential_branch(
    params: &ModelParams,
    which: Branch,
    t: f64,
    dim: usize,
) -> Array2<Complex64> {
    let spec = LiouvillianSpec::for_branch(params, which);
    let l = liouvillian_matrix(&spec, dim);
    let lt = l.mapv(|z| z * t);
    let propagator = expm(&lt);
    let v = coherent_vector(params.alpha, dim)
        .expect("small alpha fits the truncation");
    let mut rho0 = Array2::<Complex64>::zeros((dim * dim, 1));
    for m in 0..dim {
        for n in 0..dim {
            rho0[[vec_index(m, n, dim), 0]] =
                0.5 * v.amplitudes[m] * v.amplitudes[n].conj();
        }
    }
    let flat = propagator.dot(&rho0);
    let mut out = Array2::<Complex64>::zeros((dim, dim));
    for m in 0..dim {
        for n in 0..dim {
            out[[m, n]] = flat[[vec_index(m, n, dim), 0]];
        }
    }
    out
}

#[test]
fn kernel_evolution_matches_liouvillian_exponential() {
    // α small enough that a 6-level truncation feeds back negligibly.
    // |α| small enough that the truncation boundary feeds back below the
    // tolerance (the worst missing inflow scales like α^{dim+1}).
    let params = ModelParams::from_effective(
        0.013,
        0.033,
        1.0,
        0.25,
        Complex64::new(0.05, 0.0),
    )
    .unwrap();
    let dim = 6;
    for which in [Branch::Gg, Branch::Ee] {
        for &t in &[0.3, 0.9, 2.0] {
            let direct = exponential_branch(&params, which, t, dim);
            let closed = branch_density(&params, which, t, dim).unwrap();
            let mut worst = 0.0f64;
            for m in 0..dim {
                for n in 0..dim {
                    worst = worst.max((direct[[m, n]] - closed.matrix.entry(m, n)).norm());
                }
            }
            assert!(worst < 1e-10, "branch {which:?} t={t}: deviation {worst:.3e}");
        }
    }
}

#[test]
fn kernel_evolution_matches_exponential_with_complex_alpha() {
    let params = ModelParams::from_effective(
        0.0,
        0.02,
        1.0,
        0.1,
        Complex64::new(0.03, -0.04),
    )
    .unwrap();
    let dim = 6;
    for &t in &[0.7, 1.8] {
        let direct = exponential_branch(&params, Branch::Ee, t, dim);
        let closed = branch_density(&params, Branch::Ee, t, dim).unwrap();
        let mut worst = 0.0f64;
        for m in 0..dim {
            for n in 0..dim {
                worst = worst.max((direct[[m, n]] - closed.matrix.entry(m, n)).norm());
            }
        }
        assert!(worst < 1e-10, "t={t}: deviation {worst:.3e}");
    }
}

#[test]
fn dropping_the_phase_sin_term_is_detected() {
    // Rebuild the g-branch with the response phase truncated to its
    // Ωk(1 − u cos φ) part; the exponential route must reject it. This
    // keeps the test itself honest: it can tell kernels apart.
    let params = ModelParams::from_effective(
        0.013,
        0.033,
        1.0,
        0.25,
        Complex64::new(0.05, 0.0),
    )
    .unwrap();
    let dim = 6;
    let t = 0.9;
    let v = coherent_vector(params.alpha, dim).unwrap();
    let nbar = params.nbar();
    let mut mutated = Array2::<Complex64>::zeros((dim, dim));
    for m in 0..dim {
        for n in 0..dim {
            let k = m as f64 - n as f64;
            let s = (m + n) as f64;
            let d = params.kappa * params.kappa
                + params.omega_shift * params.omega_shift * k * k;
            let u = (-2.0 * params.kappa * t).exp();
            let phi = 2.0 * params.omega_shift * k * t;
            let gamma = -params.kappa * s * t
                + nbar * params.kappa / d
                    * (params.kappa - u * (params.kappa * phi.cos()
                        - params.omega_shift * k * phi.sin()));
            let phase_no_sin =
                nbar * params.kappa * params.omega_shift * k / d * (1.0 - u * phi.cos());
            let theta =
                -params.omega_g() * k * t + params.omega_shift * k * s * t + phase_no_sin;
            mutated[[m, n]] = 0.5
                * v.amplitudes[m]
                * v.amplitudes[n].conj()
                * Complex64::from_polar(gamma.exp(), theta);
        }
    }
    let direct = exponential_branch(&params, Branch::Gg, t, dim);
    let mut worst = 0.0f64;
    for m in 0..dim {
        for n in 0..dim {
            worst = worst.max((direct[[m, n]] - mutated[[m, n]]).norm());
        }
    }
    assert!(
        worst > 1e-7,
        "mutated kernel should disagree with the exponential, got {worst:.3e}"
    );
}
