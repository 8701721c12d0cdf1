//! Property tests for the kernel symmetries and the evaluation contracts.

use num_complex::Complex64;
use proptest::prelude::*;
use rayon::prelude::*;
use tpjc_core::fock::{coherent_vector, poisson_tail};
use tpjc_core::liouville::kernel;
use tpjc_core::params::ModelParams;

fn params_strategy() -> impl Strategy<Value = ModelParams> {
    (
        -1.0f64..1.0,   // beta1
        -1.0f64..1.0,   // beta diff
        0.0f64..2.0,    // kappa
        0.0f64..1.8,    // |alpha|
        0.0f64..std::f64::consts::TAU, // arg alpha
    )
        .prop_map(|(beta1, diff, kappa, r, phi)| {
            ModelParams::from_effective(
                beta1,
                beta1 + diff,
                1.0,
                kappa,
                Complex64::from_polar(r, phi),
            )
            .unwrap()
        })
}

proptest! {
    #[test]
    fn kernels_vanish_at_t_zero(params in params_strategy(), m in 0usize..40, n in 0usize..40) {
        let kv = kernel(&params, m, n, 0.0);
        prop_assert_eq!(kv.gamma, 0.0);
        prop_assert_eq!(kv.theta_g, 0.0);
        prop_assert_eq!(kv.theta_e, 0.0);
    }

    #[test]
    fn gamma_symmetric_theta_antisymmetric(
        params in params_strategy(),
        m in 0usize..40,
        n in 0usize..40,
        t in 0.0f64..30.0,
    ) {
        let kv = kernel(&params, m, n, t);
        let vk = kernel(&params, n, m, t);
        prop_assert!((kv.gamma - vk.gamma).abs() <= 1e-12 * (1.0 + kv.gamma.abs()));
        prop_assert!((kv.theta_g + vk.theta_g).abs() <= 1e-10);
        prop_assert!((kv.theta_e + vk.theta_e).abs() <= 1e-10);
    }

    #[test]
    fn diagonal_gamma_closed_form(
        params in params_strategy(),
        m in 0usize..40,
        t in 0.0f64..30.0,
    ) {
        let kv = kernel(&params, m, m, t);
        let expected = -2.0 * params.kappa * m as f64 * t
            + params.nbar() * (1.0 - (-2.0 * params.kappa * t).exp());
        prop_assert!((kv.gamma - expected).abs() <= 1e-10 * (1.0 + expected.abs()));
        prop_assert_eq!(kv.theta_g, 0.0);
        prop_assert_eq!(kv.theta_e, 0.0);
    }

    #[test]
    fn lossless_kernel_is_pure_phase(
        beta1 in -1.0f64..1.0,
        diff in -1.0f64..1.0,
        r in 0.0f64..1.8,
        m in 0usize..30,
        n in 0usize..30,
        t in 0.0f64..30.0,
    ) {
        let params = ModelParams::from_effective(
            beta1,
            beta1 + diff,
            1.0,
            0.0,
            Complex64::new(r, 0.0),
        ).unwrap();
        let kv = kernel(&params, m, n, t);
        prop_assert_eq!(kv.gamma, 0.0);
        let k = m as f64 - n as f64;
        let s = (m + n) as f64;
        let expected_g = -params.omega_g() * k * t + params.omega_shift * k * s * t;
        prop_assert!((kv.theta_g - expected_g).abs() <= 1e-9);
    }

    #[test]
    fn coherent_norm_plus_tail_is_one(
        r in 0.0f64..1.6,
        phi in 0.0f64..std::f64::consts::TAU,
        extra in 0usize..12,
    ) {
        let alpha = Complex64::from_polar(r, phi);
        // Keep the truncation admissible for the default ceiling.
        let dim = 14 + extra + (r * r) as usize * 8;
        let v = coherent_vector(alpha, dim).unwrap();
        prop_assert!((v.norm_sqr() + v.tail_bound - 1.0).abs() < 1e-14);
        let independent_tail = poisson_tail(alpha.norm_sqr(), dim - 1);
        prop_assert!((v.tail_bound - independent_tail).abs() <= 1e-14);
    }
}

#[test]
fn parallel_kernel_grid_is_bit_identical_to_sequential() {
    let params = ModelParams::from_effective(
        0.0,
        0.02,
        1.0,
        0.04,
        Complex64::new(1.0, 0.0),
    )
    .unwrap();
    let grid: Vec<(usize, usize, u32)> = (0..20)
        .flat_map(|m| (0..20).flat_map(move |n| (0..12).map(move |q| (m, n, q))))
        .collect();
    let eval = |&(m, n, q): &(usize, usize, u32)| {
        let kv = kernel(&params, m, n, 0.25 * q as f64);
        (kv.gamma.to_bits(), kv.theta_g.to_bits(), kv.theta_e.to_bits())
    };
    let sequential: Vec<_> = grid.iter().map(eval).collect();
    let parallel: Vec<_> = grid.par_iter().map(eval).collect();
    assert_eq!(sequential, parallel);
}
