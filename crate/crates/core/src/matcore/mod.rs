//! Dense complex matrix substrate: arithmetic, norms, spectra, `exp`, `t^M`.

mod eig;
mod expm;
mod funm;
mod matrix;

pub use eig::{eig, eigenvalues, schur, Schur, SpectralDecomposition};
pub use expm::{mat_exp, real_power};
pub use funm::{apply_scalar_function, EvalPath, FunctionPlan, FunctionValue, VEC_CONDITION_LIMIT};
pub use matrix::ComplexMatrix;

use crate::error::Result;

/// Default relative tolerance for matrix comparisons.
pub const DEFAULT_TOL: f64 = 1e-10;

/// Maximum absolute row sum.
pub fn inf_norm(m: &ComplexMatrix) -> f64 {
    m.inf_norm()
}

/// Largest singular value, from the largest eigenvalue of `MᴴM`.
pub fn op_norm(m: &ComplexMatrix) -> f64 {
    let gram = m.conj_transpose().matmul(m);
    match eigenvalues(&gram) {
        Ok(vals) => vals.iter().map(|l| l.re).fold(0.0, f64::max).sqrt(),
        // the Gram matrix is Hermitian PSD; fall back to the Frobenius bound
        Err(_) => m.frobenius_norm(),
    }
}

/// Every eigenvalue has real part strictly greater than `tol`.
pub fn is_positive_stable(m: &ComplexMatrix, tol: f64) -> Result<bool> {
    Ok(eigenvalues(m)?.iter().all(|l| l.re > tol))
}

/// `‖MN − NM‖∞ ≤ tol·(1 + ‖M‖∞‖N‖∞)`.
pub fn commute(m: &ComplexMatrix, n: &ComplexMatrix, tol: f64) -> Result<bool> {
    m.check_same_dim(n)?;
    Ok(m.commutator(n).inf_norm() <= tol * (1.0 + m.inf_norm() * n.inf_norm()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Complex64;

    #[test]
    fn inf_norm_examples() {
        assert_eq!(inf_norm(&ComplexMatrix::from_real([[7.0, 3.0], [3.0, 4.0]])), 10.0);
        assert_eq!(inf_norm(&ComplexMatrix::zeros(3)), 0.0);
        assert_eq!(inf_norm(&ComplexMatrix::from_real([[0.0, 1.0], [-1.0, 0.0]])), 1.0);
    }

    #[test]
    fn op_norm_examples() {
        assert!((op_norm(&ComplexMatrix::identity(2)) - 1.0).abs() < 1e-15);
        assert!((op_norm(&ComplexMatrix::from_real([[3.0, 0.0], [0.0, -5.0]])) - 5.0).abs() < 1e-14);
        // MᴴM = [[2,2],[2,4]]: λ = 3 ± √5, σ_max = √(3+√5)
        let want = (3.0 + 5f64.sqrt()).sqrt();
        let got = op_norm(&ComplexMatrix::from_real([[1.0, 0.0], [1.0, 2.0]]));
        assert!((got - want).abs() < 1e-14, "{got} vs {want}");
    }

    #[test]
    fn positive_stability() {
        assert!(is_positive_stable(&ComplexMatrix::from_real([[3.0, 1.0], [1.0, 2.0]]), 0.0).unwrap());
        assert!(!is_positive_stable(&ComplexMatrix::from_real([[0.0, 1.0], [-1.0, 0.0]]), 0.0).unwrap());
        assert!(is_positive_stable(&ComplexMatrix::identity(4), 0.0).unwrap());
    }

    #[test]
    fn commute_examples() {
        let p = ComplexMatrix::from_real([[3.0, 1.0], [1.0, 2.0]]);
        let q = ComplexMatrix::from_real([[2.0, 2.0], [2.0, 5.0]]);
        assert!(!commute(&p, &q, 1e-12).unwrap());
        assert!(commute(&p, &ComplexMatrix::identity(2), 1e-12).unwrap());
        let r = ComplexMatrix::from_real([[2.0, 0.0], [0.0, 2.0]]);
        let s = ComplexMatrix::from_real([[2.0, 3.0], [-3.0, 2.0]]);
        assert!(commute(&r, &s, 1e-12).unwrap());
        assert!(commute(&r, &ComplexMatrix::identity(3), 1e-12).is_err());
    }

    #[test]
    fn real_power_two_routes_agree() {
        let m = ComplexMatrix::from_real([[-1.0, 1.0], [-1.0, -1.0]]);
        let via_exp = real_power(0.5, &m).unwrap();
        let ln = 0.5f64.ln();
        let via_eig = apply_scalar_function(&m, |z| Ok((z * ln).exp())).unwrap().value;
        assert!(via_exp.max_abs_diff(&via_eig) <= 1e-10);
        // eigenvalues -1 ± i: 0.5^{-1±i} are the spectrum of the result
        let mut vals = eigenvalues(&via_exp).unwrap();
        vals.sort_by(|a, b| a.im.partial_cmp(&b.im).unwrap());
        let expect = |s: f64| (Complex64::new(-1.0, s) * ln).exp();
        let mut want = vec![expect(1.0), expect(-1.0)];
        want.sort_by(|a, b| a.im.partial_cmp(&b.im).unwrap());
        for (a, b) in vals.iter().zip(&want) {
            assert!((a - b).norm() < 1e-12);
        }
    }
}
