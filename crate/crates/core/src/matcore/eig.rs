//! Complex Schur form by Hessenberg reduction and single-shift QR, with
//! eigenvectors recovered from the triangular factor.

use num_complex::Complex64;

use super::ComplexMatrix;
use crate::error::{Error, Result};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Eigenvalues and (column) eigenvectors of a square matrix.
#[derive(Debug, Clone)]
pub struct SpectralDecomposition {
    pub eigenvalues: Vec<Complex64>,
    /// Unit 2-norm eigenvectors stored as columns.
    pub eigenvectors: ComplexMatrix,
    /// `‖V‖∞·‖V⁻¹‖∞`, or `+∞` when `V` is numerically singular.
    pub vec_condition: f64,
    /// `‖AV − VΛ‖∞`
    pub residual: f64,
    inverse: Option<ComplexMatrix>,
}

impl SpectralDecomposition {
    pub fn inverse_eigenvectors(&self) -> Option<&ComplexMatrix> {
        self.inverse.as_ref()
    }
}

/// Unitary `Z` and upper-triangular `T` with `A = Z T Zᴴ`.
pub struct Schur {
    pub t: ComplexMatrix,
    pub z: ComplexMatrix,
}

/// Givens rotation `[[c, s], [-s̄, c]]` mapping `(x, y)` to `(r, 0)`.
fn givens(x: Complex64, y: Complex64) -> (f64, Complex64) {
    if y == ZERO {
        return (1.0, ZERO);
    }
    if x == ZERO {
        return (0.0, y.conj() / y.norm());
    }
    let ax = x.norm();
    let rho = ax.hypot(y.norm());
    (ax / rho, (x / ax) * y.conj() / rho)
}

fn hessenberg(a: &mut ComplexMatrix, z: &mut ComplexMatrix) {
    let n = a.dim();
    for k in 0..n.saturating_sub(2) {
        let alpha: f64 = (k + 1..n).map(|i| a[(i, k)].norm_sqr()).sum::<f64>().sqrt();
        if alpha == 0.0 {
            continue;
        }
        let x0 = a[(k + 1, k)];
        let phase = if x0 == ZERO { ONE } else { x0 / x0.norm() };
        let mut v: Vec<Complex64> = (k + 1..n).map(|i| a[(i, k)]).collect();
        v[0] += phase * alpha;
        let vnorm2: f64 = v.iter().map(|c| c.norm_sqr()).sum();
        if vnorm2 == 0.0 {
            continue;
        }
        // H = I - 2 v vᴴ / (vᴴ v), applied as A ← H A H, Z ← Z H.
        for j in 0..n {
            let dot: Complex64 = v.iter().enumerate().map(|(i, vi)| vi.conj() * a[(k + 1 + i, j)]).sum();
            let f = dot * 2.0 / vnorm2;
            for (i, vi) in v.iter().enumerate() {
                a[(k + 1 + i, j)] -= vi * f;
            }
        }
        for m in [&mut *a, &mut *z] {
            for r in 0..n {
                let dot: Complex64 = v.iter().enumerate().map(|(i, vi)| m[(r, k + 1 + i)] * vi).sum();
                let f = dot * 2.0 / vnorm2;
                for (i, vi) in v.iter().enumerate() {
                    m[(r, k + 1 + i)] -= f * vi.conj();
                }
            }
        }
        for i in k + 2..n {
            a[(i, k)] = ZERO;
        }
    }
}

/// Complex Schur decomposition.
pub fn schur(m: &ComplexMatrix) -> Result<Schur> {
    let n = m.dim();
    let mut t = m.clone();
    let mut z = ComplexMatrix::identity(n);
    hessenberg(&mut t, &mut z);
    let norm = t.max_abs().max(f64::MIN_POSITIVE);
    let eps = f64::EPSILON;

    let mut hi = n - 1;
    let mut iter = 0usize;
    let mut total = 0usize;
    while hi > 0 {
        let mut lo = hi;
        while lo > 0 {
            let mut s = t[(lo, lo)].l1_norm() + t[(lo - 1, lo - 1)].l1_norm();
            if s == 0.0 {
                s = norm;
            }
            if t[(lo, lo - 1)].l1_norm() <= eps * s {
                t[(lo, lo - 1)] = ZERO;
                break;
            }
            lo -= 1;
        }
        if lo == hi {
            hi -= 1;
            iter = 0;
            continue;
        }
        iter += 1;
        total += 1;
        if total > 60 * n {
            return Err(Error::Decomposition(format!(
                "QR iteration did not converge after {total} sweeps"
            )));
        }

        let shift = if iter % 11 == 10 {
            // Exceptional shift to break cycles.
            t[(hi, hi)] + Complex64::new(0.75 * t[(hi, hi - 1)].norm(), 0.0)
        } else {
            let a = t[(hi - 1, hi - 1)];
            let b = t[(hi - 1, hi)];
            let c = t[(hi, hi - 1)];
            let d = t[(hi, hi)];
            let half = (a - d) * 0.5;
            let disc = (half * half + b * c).sqrt();
            let m1 = (a + d) * 0.5 + disc;
            let m2 = (a + d) * 0.5 - disc;
            if (m1 - d).norm() < (m2 - d).norm() {
                m1
            } else {
                m2
            }
        };

        for k in lo..hi {
            let (x, y) = if k == lo {
                (t[(k, k)] - shift, t[(k + 1, k)])
            } else {
                (t[(k, k - 1)], t[(k + 1, k - 1)])
            };
            let (c, s) = givens(x, y);
            let col0 = if k == lo { k } else { k - 1 };
            for j in col0..n {
                let (t1, t2) = (t[(k, j)], t[(k + 1, j)]);
                t[(k, j)] = t1 * c + s * t2;
                t[(k + 1, j)] = -s.conj() * t1 + t2 * c;
            }
            if k > lo {
                t[(k + 1, k - 1)] = ZERO;
            }
            let row_end = (k + 2).min(hi);
            for r in 0..=row_end {
                let (u1, u2) = (t[(r, k)], t[(r, k + 1)]);
                t[(r, k)] = u1 * c + u2 * s.conj();
                t[(r, k + 1)] = -u1 * s + u2 * c;
            }
            for r in 0..n {
                let (u1, u2) = (z[(r, k)], z[(r, k + 1)]);
                z[(r, k)] = u1 * c + u2 * s.conj();
                z[(r, k + 1)] = -u1 * s + u2 * c;
            }
        }
    }
    for j in 0..n {
        for i in j + 1..n {
            t[(i, j)] = ZERO;
        }
    }
    if !t.is_finite() {
        return Err(Error::Decomposition("Schur factor is not finite".into()));
    }
    Ok(Schur { t, z })
}

/// Eigenvalues and eigenvectors of `m`.
pub fn eig(m: &ComplexMatrix) -> Result<SpectralDecomposition> {
    let n = m.dim();
    let Schur { t, z } = schur(m)?;
    let eigenvalues = t.diag();
    let small = f64::EPSILON * t.max_abs().max(f64::MIN_POSITIVE);

    let mut y = ComplexMatrix::zeros(n);
    for i in 0..n {
        let lambda = eigenvalues[i];
        y[(i, i)] = ONE;
        for j in (0..i).rev() {
            let acc: Complex64 = (j + 1..=i).map(|l| t[(j, l)] * y[(l, i)]).sum();
            let mut den = t[(j, j)] - lambda;
            if den.norm() < small {
                den = Complex64::new(small, 0.0);
            }
            y[(j, i)] = -acc / den;
        }
    }
    let mut v = z.matmul(&y);
    for j in 0..n {
        let nrm = (0..n).map(|i| v[(i, j)].norm_sqr()).sum::<f64>().sqrt();
        if nrm > 0.0 && nrm.is_finite() {
            for i in 0..n {
                v[(i, j)] /= nrm;
            }
        }
    }

    let lam = ComplexMatrix::from_diag(&eigenvalues);
    let residual = (&m.matmul(&v) - &v.matmul(&lam)).inf_norm();
    let inverse = if v.is_finite() { v.inverse().ok() } else { None };
    let vec_condition = match &inverse {
        Some(inv) => (v.inf_norm() * inv.inf_norm()).max(1.0),
        None => f64::INFINITY,
    };
    Ok(SpectralDecomposition {
        eigenvalues,
        eigenvectors: v,
        vec_condition,
        residual,
        inverse,
    })
}

/// Eigenvalues only.
pub fn eigenvalues(m: &ComplexMatrix) -> Result<Vec<Complex64>> {
    Ok(schur(m)?.t.diag())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sorted(mut v: Vec<Complex64>) -> Vec<Complex64> {
        v.sort_by(|a, b| a.re.partial_cmp(&b.re).unwrap().then(a.im.partial_cmp(&b.im).unwrap()));
        v
    }

    fn assert_close(a: &[Complex64], b: &[Complex64], tol: f64) {
        assert_eq!(a.len(), b.len());
        for (x, y) in sorted(a.to_vec()).iter().zip(sorted(b.to_vec()).iter()) {
            assert!((x - y).norm() <= tol, "{x} vs {y}");
        }
    }

    #[test]
    fn diagonal_and_rotation() {
        let d = ComplexMatrix::from_real([[5.0, 0.0], [0.0, 7.0]]);
        assert_close(&eig(&d).unwrap().eigenvalues, &[5.0.into(), 7.0.into()], 1e-14);
        let r = ComplexMatrix::from_real([[0.0, 1.0], [-1.0, 0.0]]);
        assert_close(
            &eig(&r).unwrap().eigenvalues,
            &[Complex64::new(0.0, 1.0), Complex64::new(0.0, -1.0)],
            1e-14,
        );
    }

    #[test]
    fn symmetric_quadratic_formula() {
        let p = ComplexMatrix::from_real([[3.0, 1.0], [1.0, 2.0]]);
        let s5 = 5f64.sqrt();
        let dec = eig(&p).unwrap();
        assert_close(&dec.eigenvalues, &[((5.0 + s5) / 2.0).into(), ((5.0 - s5) / 2.0).into()], 1e-13);
        assert!(dec.residual <= 1e-10 * p.inf_norm());
        assert!(dec.vec_condition >= 1.0 && dec.vec_condition < 3.0);
    }

    #[test]
    fn general_complex_reconstruction() {
        let m = ComplexMatrix::from_rows(&[
            vec![Complex64::new(1.0, 2.0), Complex64::new(-3.0, 0.5), Complex64::new(0.0, 1.0), Complex64::new(2.0, 0.0)],
            vec![Complex64::new(0.5, 0.0), Complex64::new(2.0, -1.0), Complex64::new(1.0, 1.0), Complex64::new(0.0, 0.0)],
            vec![Complex64::new(-1.0, 0.0), Complex64::new(0.0, 0.0), Complex64::new(3.0, 0.0), Complex64::new(1.0, -2.0)],
            vec![Complex64::new(0.0, 0.3), Complex64::new(1.0, 0.0), Complex64::new(-2.0, 0.0), Complex64::new(-1.0, 0.0)],
        ])
        .unwrap();
        let dec = eig(&m).unwrap();
        assert!(dec.residual <= 1e-10 * m.inf_norm(), "residual {}", dec.residual);
        let tr: Complex64 = dec.eigenvalues.iter().sum();
        assert!((tr - m.trace()).norm() < 1e-12);
    }

    #[test]
    fn defective_has_huge_condition() {
        let j = ComplexMatrix::from_real([[1.0, 1.0], [0.0, 1.0]]);
        let dec = eig(&j).unwrap();
        assert!(dec.vec_condition > 1e6);
    }

    #[test]
    fn schur_is_unitary_similarity() {
        let m = ComplexMatrix::from_real([[2.0, -1.0, 0.3], [4.0, 0.5, 1.0], [-1.0, 2.0, 3.0]]);
        let Schur { t, z } = schur(&m).unwrap();
        let back = z.matmul(&t).matmul(&z.conj_transpose());
        assert!(back.approx_eq(&m, 1e-13));
        assert!(z.matmul(&z.conj_transpose()).approx_eq(&ComplexMatrix::identity(3), 1e-14));
    }
}
