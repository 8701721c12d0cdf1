//! Superoperators on the truncated field space, as explicit matrices acting
//! on row-major vectorized density matrices.
//!
//! Three maps generate the dissipative field dynamics:
//!
//! ```text
//!   F ρ = a ρ a†,     M ρ = a†a ρ,     P ρ = ρ a†a,
//! ```
//!
//! with the closed algebra [F, M] = F, [F, P] = F, [M, P] = 0. On a
//! truncated space the identities hold exactly on the matrix units |m⟩⟨n|
//! with m, n < dim − 1; the top boundary row/column sees the truncated a†.
//!
//! The branch Liouvillians generated by the atom-diagonal effective
//! Hamiltonian plus cavity loss are
//!
//! ```text
//!   L_gg = 2κF + iΩ(M² − P²) − (κ + iΩ_g)M − (κ − iΩ_g)P,
//!   L_ee = 2κF − iΩ(M² − P²) − (κ + iΩ_e)M − (κ − iΩ_e)P,
//! ```
//!
//! with Ω_g = β₁ + Ω and Ω_e = β₂ + 3Ω.

use ndarray::Array2;
use num_complex::Complex64;

use crate::liouville::{Branch, LiouvillianSpec};

/// Column index of the matrix unit |m⟩⟨n| in the vectorized space.
pub fn vec_index(m: usize, n: usize, dim: usize) -> usize {
    m * dim + n
}

/// F ρ = a ρ a† as a dim² × dim² matrix.
pub fn jump_superop(dim: usize) -> Array2<Complex64> {
    let d2 = dim * dim;
    let mut f = Array2::zeros((d2, d2));
    for m in 0..dim.saturating_sub(1) {
        for n in 0..dim - 1 {
            let amp = (((m + 1) * (n + 1)) as f64).sqrt();
            f[[vec_index(m, n, dim), vec_index(m + 1, n + 1, dim)]] = Complex64::new(amp, 0.0);
        }
    }
    f
}

/// M ρ = a†a ρ as a diagonal superoperator matrix.
pub fn number_left_superop(dim: usize) -> Array2<Complex64> {
    let d2 = dim * dim;
    let mut m_op = Array2::zeros((d2, d2));
    for m in 0..dim {
        for n in 0..dim {
            let i = vec_index(m, n, dim);
            m_op[[i, i]] = Complex64::new(m as f64, 0.0);
        }
    }
    m_op
}

/// P ρ = ρ a†a as a diagonal superoperator matrix.
pub fn number_right_superop(dim: usize) -> Array2<Complex64> {
    let d2 = dim * dim;
    let mut p_op = Array2::zeros((d2, d2));
    for m in 0..dim {
        for n in 0..dim {
            let i = vec_index(m, n, dim);
            p_op[[i, i]] = Complex64::new(n as f64, 0.0);
        }
    }
    p_op
}

/// Check [F, M] = F, [F, P] = F, [M, P] = 0 on the interior matrix units of
/// a `dim`-level truncation, to 1e-12.
pub fn superop_commutators_check(dim: usize) -> bool {
    assert!(dim >= 2, "need at least two levels");
    let f = jump_superop(dim);
    let m = number_left_superop(dim);
    let p = number_right_superop(dim);
    commutators_hold_on_interior(&f, &m, &p, dim, 1e-12)
}

/// The commutator test against caller-supplied superoperator matrices;
/// exposed so a deliberately corrupted map can be shown to fail.
pub fn commutators_hold_on_interior(
    f: &Array2<Complex64>,
    m: &Array2<Complex64>,
    p: &Array2<Complex64>,
    dim: usize,
    tol: f64,
) -> bool {
    let c_fm = f.dot(m) - m.dot(f) - f;
    let c_fp = f.dot(p) - p.dot(f) - f;
    let c_mp = m.dot(p) - p.dot(m);
    let mut worst = 0.0f64;
    for mm in 0..dim - 1 {
        for nn in 0..dim - 1 {
            let col = vec_index(mm, nn, dim);
            for row in 0..dim * dim {
                worst = worst
                    .max(c_fm[[row, col]].norm())
                    .max(c_fp[[row, col]].norm())
                    .max(c_mp[[row, col]].norm());
            }
        }
    }
    worst <= tol
}

/// Assemble the branch Liouvillian matrix on a `dim`-level truncation.
pub fn liouvillian_matrix(spec: &LiouvillianSpec, dim: usize) -> Array2<Complex64> {
    let f = jump_superop(dim);
    let m = number_left_superop(dim);
    let p = number_right_superop(dim);
    let i = Complex64::i();
    let sign = match spec.which {
        Branch::Gg => 1.0,
        Branch::Ee => -1.0,
    };
    let kappa = Complex64::new(spec.kappa, 0.0);
    let m2p2 = m.dot(&m) - p.dot(&p);
    let quad = m2p2.mapv(|z| z * i * sign * spec.omega_shift);
    let left = m.mapv(|z| z * (kappa + i * spec.omega_branch));
    let right = p.mapv(|z| z * (kappa - i * spec.omega_branch));
    f.mapv(|z| z * 2.0 * spec.kappa) + quad - left - right
}
