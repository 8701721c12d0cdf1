//! Truncated Fock-space containers: coherent state vectors, Poisson weights,
//! truncation selection, and the field density matrix.

use ndarray::Array2;
use num_complex::Complex64;

use crate::error::{Error, Result};

/// Default ceiling on the truncated probability mass. Entropy features live
/// at the 1e-2 scale, leaving eight orders of headroom.
pub const DEFAULT_TAIL_CEILING: f64 = 1e-10;

/// Hermiticity tolerance for density matrices.
pub const HERMITICITY_TOL: f64 = 1e-12;

/// Diagonal floor for closed-form density matrices.
pub const DIAGONAL_FLOOR: f64 = -1e-10;

/// ln(n!) by direct summation; exact for small n, stable for large n.
pub fn ln_factorial(n: usize) -> f64 {
    (2..=n).map(|k| (k as f64).ln()).sum()
}

/// Poisson weights e^{−mean} meanⁿ/n! for n = 0..dim, by upward recurrence.
pub fn poisson_weights(mean: f64, dim: usize) -> Vec<f64> {
    let mut w = Vec::with_capacity(dim);
    if dim == 0 {
        return w;
    }
    let mut p = (-mean).exp();
    w.push(p);
    for n in 1..dim {
        p *= mean / n as f64;
        w.push(p);
    }
    w
}

/// Upper Poisson tail P(X > n) for X ~ Poisson(mean), summed forward from
/// n+1 so that tiny tails keep full relative precision (1 − Σ p_k would lose
/// everything below machine epsilon).
pub fn poisson_tail(mean: f64, n: usize) -> f64 {
    if mean == 0.0 {
        return 0.0;
    }
    // p_{n+1} in log space; the recurrence then walks the tail upward.
    let k0 = n + 1;
    let ln_p = -mean + k0 as f64 * mean.ln() - ln_factorial(k0);
    let mut p = ln_p.exp();
    let mut sum = 0.0;
    let mut k = k0;
    loop {
        sum += p;
        k += 1;
        p *= mean / k as f64;
        if p < sum * 1e-18 + f64::MIN_POSITIVE || k > k0 + 2000 {
            break;
        }
    }
    sum
}

/// A coherent state |α⟩ truncated to `dim` Fock levels.
#[derive(Debug, Clone)]
pub struct CoherentVector {
    /// Number of retained levels (indices 0..dim).
    pub dim: usize,
    /// Amplitudes αⁿ e^{−|α|²/2}/√(n!).
    pub amplitudes: Vec<Complex64>,
    /// Probability mass left outside the truncation.
    pub tail_bound: f64,
}

impl CoherentVector {
    /// Squared norm of the retained amplitudes.
    pub fn norm_sqr(&self) -> f64 {
        self.amplitudes.iter().map(|a| a.norm_sqr()).sum()
    }
}

/// Truncated coherent state under the default tail ceiling.
pub fn coherent_vector(alpha: Complex64, dim: usize) -> Result<CoherentVector> {
    coherent_vector_with_ceiling(alpha, dim, DEFAULT_TAIL_CEILING)
}

/// Truncated coherent state; errors when the truncation leaves more than
/// `ceiling` probability outside.
pub fn coherent_vector_with_ceiling(
    alpha: Complex64,
    dim: usize,
    ceiling: f64,
) -> Result<CoherentVector> {
    if dim == 0 {
        return Err(Error::EmptyTruncation);
    }
    let nbar = alpha.norm_sqr();
    let tail_bound = poisson_tail(nbar, dim - 1);
    if tail_bound > ceiling {
        return Err(Error::Truncation { tail: tail_bound, ceiling });
    }
    let mut amplitudes = Vec::with_capacity(dim);
    let mut c = Complex64::new((-0.5 * nbar).exp(), 0.0);
    amplitudes.push(c);
    for n in 1..dim {
        c *= alpha / (n as f64).sqrt();
        amplitudes.push(c);
    }
    Ok(CoherentVector { dim, amplitudes, tail_bound })
}

/// Smallest truncation index N such that the initial coherent state carries
/// less than `epsilon` probability above level N.
///
/// The amplitude only decays under cavity loss, so the initial Poisson tail
/// bounds the truncation error over any horizon; `_horizon` is accepted for
/// interface symmetry but does not enter the bound. Scanning upward from
/// N = 0 realizes the rule N ≥ |α|² + c·|α| with c grown until the tail
/// clears epsilon.
pub fn choose_truncation(alpha: Complex64, _horizon: f64, epsilon: f64) -> usize {
    assert!(epsilon > 0.0, "tail target must be positive");
    let nbar = alpha.norm_sqr();
    let mut n = 0;
    while poisson_tail(nbar, n) >= epsilon {
        n += 1;
    }
    n
}

/// Truncated field density matrix ⟨m|ρ_F|n⟩ for 0 ≤ m, n < dim.
#[derive(Debug, Clone)]
pub struct FieldDensityMatrix {
    data: Array2<Complex64>,
    tail_bound: f64,
}

impl FieldDensityMatrix {
    /// Wrap a matrix, enforcing Hermiticity to 1e-12 and a −1e-10 diagonal
    /// floor (the closed-form constructions satisfy both analytically).
    pub fn new(data: Array2<Complex64>, tail_bound: f64) -> Result<Self> {
        Self::with_tolerances(data, tail_bound, HERMITICITY_TOL, DIAGONAL_FLOOR)
    }

    /// Wrap a matrix under caller-chosen tolerances (the brute-force
    /// integrator needs a looser diagonal floor than the closed forms).
    pub fn with_tolerances(
        data: Array2<Complex64>,
        tail_bound: f64,
        hermiticity_tol: f64,
        diagonal_floor: f64,
    ) -> Result<Self> {
        let (r, c) = data.dim();
        if r != c {
            return Err(Error::DimensionMismatch { expected: r, got: c });
        }
        let mut max_asym = 0.0f64;
        for m in 0..r {
            for n in m..r {
                let asym = (data[[m, n]] - data[[n, m]].conj()).norm();
                max_asym = max_asym.max(asym);
            }
        }
        if max_asym > hermiticity_tol {
            return Err(Error::NotHermitian { max_asymmetry: max_asym, tolerance: hermiticity_tol });
        }
        for m in 0..r {
            let d = data[[m, m]].re;
            if d < diagonal_floor {
                return Err(Error::NegativeDiagonal { value: d, floor: diagonal_floor });
            }
        }
        Ok(Self { data, tail_bound })
    }

    /// Pure-state matrix |v⟩⟨v| from a truncated coherent vector.
    pub fn from_pure(v: &CoherentVector) -> Self {
        let mut data = Array2::zeros((v.dim, v.dim));
        for m in 0..v.dim {
            for n in 0..v.dim {
                data[[m, n]] = v.amplitudes[m] * v.amplitudes[n].conj();
            }
        }
        Self { data, tail_bound: v.tail_bound }
    }

    pub fn dim(&self) -> usize {
        self.data.nrows()
    }

    pub fn entry(&self, m: usize, n: usize) -> Complex64 {
        self.data[[m, n]]
    }

    pub fn data(&self) -> &Array2<Complex64> {
        &self.data
    }

    pub fn tail_bound(&self) -> f64 {
        self.tail_bound
    }

    pub fn trace(&self) -> f64 {
        (0..self.dim()).map(|m| self.data[[m, m]].re).sum()
    }

    /// Tr ρ² = Σ |ρ_mn|² for Hermitian ρ.
    pub fn purity(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum()
    }

    /// Largest |ρ_mn − ρ_nm*|.
    pub fn hermiticity_defect(&self) -> f64 {
        let d = self.dim();
        let mut worst = 0.0f64;
        for m in 0..d {
            for n in m..d {
                worst = worst.max((self.data[[m, n]] - self.data[[n, m]].conj()).norm());
            }
        }
        worst
    }

    /// Largest element-wise deviation from another matrix over the shared
    /// top-left square. NaN-sticky.
    pub fn max_deviation(&self, other: &Self) -> f64 {
        let d = self.dim().min(other.dim());
        let mut worst = 0.0f64;
        for m in 0..d {
            for n in 0..d {
                let dev = (self.data[[m, n]] - other.data[[m, n]]).norm();
                worst = if dev.is_nan() { f64::NAN } else { worst.max(dev) };
            }
        }
        worst
    }
}
