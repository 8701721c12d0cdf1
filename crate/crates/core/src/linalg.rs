//! Small dense linear-algebra helpers: Hermitian eigenvalues and a matrix
//! exponential. Self-contained (no LAPACK) — the matrices involved are at
//! most a few thousand entries, well inside Jacobi territory.

use ndarray::Array2;
use num_complex::Complex64;

/// Eigenvalues of a Hermitian matrix, ascending.
///
/// Uses the real embedding H = A + iB → [[A, −B], [B, A]], whose spectrum is
/// that of H with every eigenvalue doubled, then a cyclic Jacobi sweep on
/// the real symmetric embedding.
pub fn hermitian_eigenvalues(h: &Array2<Complex64>) -> Vec<f64> {
    let n = h.nrows();
    assert_eq!(n, h.ncols(), "matrix must be square");
    let mut m = vec![0.0f64; 2 * n * 2 * n];
    let idx = |r: usize, c: usize| r * 2 * n + c;
    for r in 0..n {
        for c in 0..n {
            let z = h[[r, c]];
            m[idx(r, c)] = z.re;
            m[idx(r + n, c + n)] = z.re;
            m[idx(r, c + n)] = -z.im;
            m[idx(r + n, c)] = z.im;
        }
    }
    let mut eig = symmetric_eigenvalues(&mut m, 2 * n);
    eig.sort_by(|a, b| a.partial_cmp(b).unwrap());
    // Each eigenvalue of H appears twice in the embedding.
    (0..n).map(|k| 0.5 * (eig[2 * k] + eig[2 * k + 1])).collect()
}

/// Cyclic Jacobi eigenvalue iteration for a real symmetric matrix stored
/// row-major in `m` (destroyed). Returns the unsorted eigenvalues.
fn symmetric_eigenvalues(m: &mut [f64], n: usize) -> Vec<f64> {
    let idx = |r: usize, c: usize| r * n + c;
    let off = |m: &[f64]| -> f64 {
        let mut s = 0.0;
        for r in 0..n {
            for c in (r + 1)..n {
                s += m[idx(r, c)] * m[idx(r, c)];
            }
        }
        s
    };
    let scale: f64 = m.iter().map(|x| x * x).sum::<f64>().max(f64::MIN_POSITIVE);
    let tol = scale * 1e-30;
    for _sweep in 0..60 {
        if off(m) <= tol {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = m[idx(p, q)];
                if apq.abs() <= f64::MIN_POSITIVE {
                    continue;
                }
                let app = m[idx(p, p)];
                let aqq = m[idx(q, q)];
                let tau = (aqq - app) / (2.0 * apq);
                let t = if tau >= 0.0 {
                    1.0 / (tau + (1.0 + tau * tau).sqrt())
                } else {
                    -1.0 / (-tau + (1.0 + tau * tau).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;
                // Rotate rows/columns p and q.
                for k in 0..n {
                    let akp = m[idx(k, p)];
                    let akq = m[idx(k, q)];
                    m[idx(k, p)] = c * akp - s * akq;
                    m[idx(k, q)] = s * akp + c * akq;
                }
                for k in 0..n {
                    let apk = m[idx(p, k)];
                    let aqk = m[idx(q, k)];
                    m[idx(p, k)] = c * apk - s * aqk;
                    m[idx(q, k)] = s * apk + c * aqk;
                }
            }
        }
    }
    (0..n).map(|k| m[idx(k, k)]).collect()
}

/// Matrix exponential by scaling-and-squaring with a truncated Taylor
/// series. Intended for the small superoperator matrices used in the
/// validation suite.
pub fn expm(a: &Array2<Complex64>) -> Array2<Complex64> {
    let n = a.nrows();
    assert_eq!(n, a.ncols(), "matrix must be square");
    // 1-norm (max column sum) controls the scaling.
    let mut norm = 0.0f64;
    for c in 0..n {
        let col: f64 = (0..n).map(|r| a[[r, c]].norm()).sum();
        norm = norm.max(col);
    }
    let s = if norm > 0.5 { (norm / 0.5).log2().ceil() as u32 } else { 0 };
    let scale = Complex64::new(0.5f64.powi(s as i32).max(f64::MIN_POSITIVE), 0.0);
    let scaled = a.mapv(|z| z * scale);

    let mut result = Array2::<Complex64>::eye(n);
    let mut term = Array2::<Complex64>::eye(n);
    for k in 1..=24 {
        term = term.dot(&scaled) / Complex64::new(k as f64, 0.0);
        result += &term;
    }
    for _ in 0..s {
        result = result.dot(&result);
    }
    result
}
