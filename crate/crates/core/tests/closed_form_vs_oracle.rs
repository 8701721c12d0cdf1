//! Closed-form field state against brute-force integration of the master
//! equation on the joint space. The full sweep over the trace parameter
//! sets lives in the acceptance suite; these are fast spot checks.

use num_complex::Complex64;
use tpjc_core::liouville::field_state;
use tpjc_core::oracle::{
    propagate_sampled_with_gate, reduce_field, IntegratorConfig, JointState,
};
use tpjc_core::params::{DimensionlessInputs, ModelParams};

fn max_dev(params: &ModelParams, dim: usize, times: &[f64]) -> f64 {
    let joint_dim = dim + 2; // guard levels absorb truncation edge effects
    let initial = JointState::initial_superposition(params, joint_dim).unwrap();
    let config = IntegratorConfig::suggested(params, joint_dim);
    let (states, _gate) =
        propagate_sampled_with_gate(params, &initial, times, &config).unwrap();
    let mut worst = 0.0f64;
    for state in &states {
        let reduced = reduce_field(&state).unwrap();
        let closed = field_state(params, state.t(), dim).unwrap();
        worst = worst.max(closed.max_deviation(&reduced));
    }
    worst
}

#[test]
fn moderate_damping_short_horizon() {
    let params = ModelParams::from_dimensionless(&DimensionlessInputs {
        kappa: 0.04,
        beta_diff: 0.02,
        beta1: 0.0,
        nbar: 1.0,
        detuning: None,
    })
    .unwrap();
    let dev = max_dev(&params, 15, &[0.5, 2.0]);
    assert!(dev <= 1e-6, "deviation {dev:.3e}");
}

#[test]
fn strong_damping_with_complex_amplitude() {
    let params = ModelParams::from_effective(
        0.01,
        0.05,
        1.0,
        0.3,
        Complex64::new(0.5, -0.6),
    )
    .unwrap();
    let dev = max_dev(&params, 14, &[1.0, 3.0]);
    assert!(dev <= 1e-6, "deviation {dev:.3e}");
}

#[test]
fn nonzero_beta1_branch_phases() {
    // β₁ ≠ 0 exercises Ω_g and Ω_e separately (the entropy is blind to a
    // common shift, the field matrix is not).
    let params = ModelParams::from_dimensionless(&DimensionlessInputs {
        kappa: 0.1,
        beta_diff: 0.02,
        beta1: 0.35,
        nbar: 1.0,
        detuning: None,
    })
    .unwrap();
    let dev = max_dev(&params, 15, &[2.5]);
    assert!(dev <= 1e-6, "deviation {dev:.3e}");
}
