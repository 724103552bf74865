//! Generic `f(A)` evaluation.
//!
//! Diagonalisable inputs go through `V·diag(f(λ))·V⁻¹`. When the eigenvector
//! matrix is too ill-conditioned the function is expanded in a Taylor series
//! about the mean eigenvalue; the coefficients are obtained from samples of `f`
//! on a circle (discrete Cauchy integral), so only function values are needed.

use std::f64::consts::TAU;

use num_complex::Complex64;

use super::eig::{eig, SpectralDecomposition};
use super::ComplexMatrix;
use crate::error::{Error, Result};

/// Eigenvector conditioning above which the Taylor fallback is used.
pub const VEC_CONDITION_LIMIT: f64 = 1e6;

const TAYLOR_SAMPLES: usize = 64;
const TAYLOR_MAX_TERMS: usize = 32;

/// Which route produced a matrix function value.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EvalPath {
    Eigen,
    TaylorFallback,
}

#[derive(Debug, Clone)]
pub struct FunctionValue {
    pub value: ComplexMatrix,
    pub path: EvalPath,
}

/// `f(M)` for a scalar function analytic near the spectrum of `M`.
pub fn apply_scalar_function<F>(m: &ComplexMatrix, f: F) -> Result<FunctionValue>
where
    F: Fn(Complex64) -> Result<Complex64>,
{
    FunctionPlan::new(m)?.eval_scaled(1.0, &f)
}

/// A matrix prepared for repeated evaluation of `f(c·M)` over many real `c`.
///
/// The eigen-decomposition of `M` is computed once; `c·M` shares it.
#[derive(Debug, Clone)]
pub struct FunctionPlan {
    matrix: ComplexMatrix,
    route: Route,
}

#[derive(Debug, Clone)]
enum Route {
    Eigen {
        vectors: ComplexMatrix,
        inverse: ComplexMatrix,
        values: Vec<Complex64>,
    },
    Taylor,
}

impl FunctionPlan {
    pub fn new(m: &ComplexMatrix) -> Result<Self> {
        let route = if is_diagonal(m) {
            Route::Eigen {
                vectors: ComplexMatrix::identity(m.dim()),
                inverse: ComplexMatrix::identity(m.dim()),
                values: m.diag(),
            }
        } else {
            let dec: SpectralDecomposition = eig(m)?;
            match dec.inverse_eigenvectors() {
                Some(inv) if dec.vec_condition <= VEC_CONDITION_LIMIT => Route::Eigen {
                    inverse: inv.clone(),
                    values: dec.eigenvalues.clone(),
                    vectors: dec.eigenvectors,
                },
                _ => Route::Taylor,
            }
        };
        Ok(Self {
            matrix: m.clone(),
            route,
        })
    }

    pub fn path(&self) -> EvalPath {
        match self.route {
            Route::Eigen { .. } => EvalPath::Eigen,
            Route::Taylor => EvalPath::TaylorFallback,
        }
    }

    pub fn eigenvalues(&self) -> Option<&[Complex64]> {
        match &self.route {
            Route::Eigen { values, .. } => Some(values),
            Route::Taylor => None,
        }
    }

    /// `f(c·M)`.
    pub fn eval_scaled<F>(&self, c: f64, f: &F) -> Result<FunctionValue>
    where
        F: Fn(Complex64) -> Result<Complex64>,
    {
        match &self.route {
            Route::Eigen {
                vectors,
                inverse,
                values,
            } => {
                let n = values.len();
                let fv = values
                    .iter()
                    .map(|&l| f(scaled_eigenvalue(l, c)))
                    .collect::<Result<Vec<_>>>()?;
                // V·diag(fv)·V⁻¹ without forming the diagonal matrix
                let mut out = ComplexMatrix::zeros(n);
                for i in 0..n {
                    for k in 0..n {
                        let vik = vectors[(i, k)] * fv[k];
                        if vik == Complex64::new(0.0, 0.0) {
                            continue;
                        }
                        for j in 0..n {
                            out[(i, j)] += vik * inverse[(k, j)];
                        }
                    }
                }
                if !out.is_finite() {
                    return Err(Error::Evaluation("matrix function value is not finite".into()));
                }
                Ok(FunctionValue {
                    value: out,
                    path: EvalPath::Eigen,
                })
            }
            Route::Taylor => {
                let value = taylor_fallback(&self.matrix.scale_real(c), f)?;
                Ok(FunctionValue {
                    value,
                    path: EvalPath::TaylorFallback,
                })
            }
        }
    }
}

/// `c·λ` with `0·∞` treated as `0`.
fn scaled_eigenvalue(l: Complex64, c: f64) -> Complex64 {
    let mul = |v: f64| if v == 0.0 { 0.0 } else { v * c };
    Complex64::new(mul(l.re), mul(l.im))
}

fn is_diagonal(m: &ComplexMatrix) -> bool {
    let n = m.dim();
    (0..n).all(|i| (0..n).all(|j| i == j || m[(i, j)] == Complex64::new(0.0, 0.0)))
}

fn taylor_fallback<F>(m: &ComplexMatrix, f: &F) -> Result<ComplexMatrix>
where
    F: Fn(Complex64) -> Result<Complex64>,
{
    let n = m.dim();
    let values = super::eig::eigenvalues(m)?;
    let center = values.iter().sum::<Complex64>() / n as f64;
    let b = m - &ComplexMatrix::scalar(n, center);
    let spread = values.iter().map(|l| (l - center).norm()).fold(0.0, f64::max);
    let bnorm = b.inf_norm();
    let radius = (2.0 * spread).max(bnorm).max(1e-8 * (1.0 + center.norm()));

    // c_k = (1/N) Σ_j f(center + r ω^j) ω^{-jk} / r^k
    let samples = (0..TAYLOR_SAMPLES)
        .map(|j| {
            let w = Complex64::from_polar(1.0, TAU * j as f64 / TAYLOR_SAMPLES as f64);
            f(center + w * radius)
        })
        .collect::<Result<Vec<_>>>()?;
    let coeff = |k: usize| -> Complex64 {
        let s: Complex64 = samples
            .iter()
            .enumerate()
            .map(|(j, &fj)| {
                fj * Complex64::from_polar(1.0, -TAU * (j * k) as f64 / TAYLOR_SAMPLES as f64)
            })
            .sum();
        s / (TAYLOR_SAMPLES as f64 * radius.powi(k as i32))
    };

    let mut acc = ComplexMatrix::scalar(n, coeff(0));
    let mut power = ComplexMatrix::identity(n);
    let mut small_run = 0;
    for k in 1..TAYLOR_MAX_TERMS {
        power = power.matmul(&b);
        let term = power.scale(coeff(k));
        acc += &term;
        let tn = term.inf_norm();
        if tn <= 1e-16 * acc.inf_norm().max(f64::MIN_POSITIVE) || power.max_abs() == 0.0 {
            small_run += 1;
        } else {
            small_run = 0;
        }
        if small_run >= 3 && k + 1 >= n {
            if !acc.is_finite() {
                break;
            }
            return Ok(acc);
        }
    }
    Err(Error::Evaluation(
        "Taylor fallback for a defective matrix did not converge".into(),
    ))
}
