//! Two-parameter Mittag-Leffler function `E_{φ,ψ}(z) = Σ z^k / Γ(φk + ψ)`.
//!
//! The scalar evaluator picks one of four strategies by `|z|`:
//!
//! 1. closed forms for `(φ, ψ) = (1, 1)` and `(1, 2)`;
//! 2. the Taylor series (compensated summation) inside [`series_radius`];
//! 3. the large-argument expansion (pole residues plus the algebraic series
//!    `−Σ z^{-k}/Γ(ψ − φk)`) beyond [`asymptotic_radius`];
//! 4. numerical inversion of the Laplace transform `s^{φ−ψ}/(s^φ − z)` on an
//!    optimally placed parabolic contour in between.

mod asymptotic;
pub mod gamma;
mod laplace;
mod series;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matcore::{apply_scalar_function, ComplexMatrix, FunctionPlan};

pub use gamma::{gamma as gamma_fn, ln_gamma, recip_gamma};

/// Upper end of the supported `φ` range.
pub const MAX_PHI: f64 = 2.0;
/// Upper end of the supported `ψ` range.
pub const MAX_PSI: f64 = 5.0;

/// The Mittag-Leffler parameter pair `(φ, ψ)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MLParams {
    pub phi: f64,
    pub psi: f64,
}

impl MLParams {
    pub fn new(phi: f64, psi: f64) -> Result<Self> {
        let p = Self { phi, psi };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.phi > 0.0 && self.phi.is_finite()) {
            return Err(Error::Domain(format!("phi must be positive, got {}", self.phi)));
        }
        if !(self.psi > 0.0 && self.psi.is_finite()) {
            return Err(Error::Domain(format!("psi must be positive, got {}", self.psi)));
        }
        Ok(())
    }

    fn check_supported(&self) -> Result<()> {
        self.validate()?;
        if self.phi > MAX_PHI || self.psi > MAX_PSI {
            return Err(Error::Domain(format!(
                "(phi, psi) = ({}, {}) outside the supported range (0, {MAX_PHI}] x (0, {MAX_PSI}]",
                self.phi, self.psi
            )));
        }
        Ok(())
    }

    /// `(1, 1)`: the exponential.
    pub fn exponential() -> Self {
        Self { phi: 1.0, psi: 1.0 }
    }
}

/// Evaluation route for [`ml_scalar_with`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Strategy {
    Auto,
    ClosedForm,
    Series,
    LaplaceInversion,
    Asymptotic,
}

/// Radius below which the Taylor series is summed directly.
///
/// The largest term grows like `exp(|z|^{1/φ})`; keeping that exponent below 8
/// bounds the cancellation loss to about four digits.
pub fn series_radius(phi: f64) -> f64 {
    15f64.min(8f64.powf(phi))
}

/// Radius beyond which the large-argument expansion is used.
///
/// The smallest algebraic term behaves like `exp(−|z|^{1/φ})`, hence the
/// `30^φ` floor.
pub fn asymptotic_radius(phi: f64) -> f64 {
    30f64.max((2.0 / phi).powf(1.0 / phi) * 10.0).max(30f64.powf(phi))
}

/// The strategy `Auto` resolves to for `(z, p)`.
pub fn choose_strategy(z: Complex64, p: &MLParams) -> Strategy {
    if has_closed_form(p) {
        return Strategy::ClosedForm;
    }
    let r = z.norm();
    if r <= series_radius(p.phi) {
        Strategy::Series
    } else if r >= asymptotic_radius(p.phi) {
        Strategy::Asymptotic
    } else {
        Strategy::LaplaceInversion
    }
}

fn has_closed_form(p: &MLParams) -> bool {
    p.phi == 1.0 && (p.psi == 1.0 || p.psi == 2.0)
}

fn closed_form(z: Complex64, p: &MLParams) -> Option<Complex64> {
    if p.phi != 1.0 {
        return None;
    }
    if p.psi == 1.0 {
        return Some(z.exp());
    }
    if p.psi == 2.0 {
        // (e^z − 1)/z
        if z.norm() < 1e-4 {
            return Some(Complex64::new(1.0, 0.0) + z / 2.0 + z * z / 6.0 + z * z * z / 24.0);
        }
        return Some(expm1(z) / z);
    }
    None
}

fn expm1(z: Complex64) -> Complex64 {
    // e^{x+iy} − 1 = (e^x cos y − 1) + i e^x sin y, with e^x cos y − 1 = expm1(x) cos y − 2 sin²(y/2)
    let (x, y) = (z.re, z.im);
    let half = (y / 2.0).sin();
    Complex64::new(x.exp_m1() * y.cos() - 2.0 * half * half, x.exp() * y.sin())
}

/// `E_{φ,ψ}(z)`.
pub fn ml_scalar(z: Complex64, p: &MLParams) -> Result<Complex64> {
    ml_scalar_with(z, p, Strategy::Auto)
}

/// `E_{φ,ψ}(z)` through an explicit strategy.
///
/// Forcing a strategy outside its region is allowed; accuracy is then the
/// caller's concern.
pub fn ml_scalar_with(z: Complex64, p: &MLParams, strategy: Strategy) -> Result<Complex64> {
    p.check_supported()?;
    if !z.is_finite() {
        return Err(Error::Domain(format!("Mittag-Leffler argument {z} is not finite")));
    }
    if z == Complex64::new(0.0, 0.0) {
        return Ok(Complex64::new(recip_gamma(p.psi), 0.0));
    }
    let strategy = match strategy {
        Strategy::Auto => choose_strategy(z, p),
        s => s,
    };
    let value = match strategy {
        Strategy::ClosedForm => closed_form(z, p).ok_or_else(|| {
            Error::Domain(format!("no closed form for (phi, psi) = ({}, {})", p.phi, p.psi))
        })?,
        Strategy::Series => series::taylor(z, p)?,
        Strategy::Asymptotic => asymptotic::expansion(z, p),
        Strategy::LaplaceInversion => laplace::invert(z, p)?,
        Strategy::Auto => unreachable!(),
    };
    if !value.is_finite() {
        return Err(Error::Evaluation(format!(
            "E_({}, {})({z}) is not finite ({strategy:?})",
            p.phi, p.psi
        )));
    }
    if z.im == 0.0 {
        return Ok(Complex64::new(value.re, 0.0));
    }
    Ok(value)
}

/// The strategies whose region contains `|z| = x`, each widened to overlap
/// its neighbour.
fn overlapping_strategies(x: f64, phi: f64) -> Vec<Strategy> {
    let (s, a) = (series_radius(phi), asymptotic_radius(phi));
    let mut out = Vec::new();
    if x <= s {
        out.push(Strategy::Series);
    }
    if x >= s / 2.0 && x <= 2.0 * a {
        out.push(Strategy::LaplaceInversion);
    }
    if x >= a {
        out.push(Strategy::Asymptotic);
    }
    out
}

/// Largest disagreement between adjacent strategies on `points`
/// log-spaced arguments of the negative axis from `−0.01` to four times the
/// asymptotic radius, with the point where it occurs.
pub fn strategy_disagreement(p: &MLParams, points: usize) -> Result<(f64, f64)> {
    p.check_supported()?;
    let (lo, hi) = (1e-2f64.ln(), (4.0 * asymptotic_radius(p.phi)).ln());
    let mut worst = (0.0, 0.0);
    for i in 0..points {
        let x = (lo + (hi - lo) * i as f64 / (points.max(2) - 1) as f64).exp();
        let z = Complex64::new(-x, 0.0);
        let values = overlapping_strategies(x, p.phi)
            .into_iter()
            .map(|s| ml_scalar_with(z, p, s))
            .collect::<Result<Vec<_>>>()?;
        for w in values.windows(2) {
            let d = (w[0] - w[1]).norm();
            if d > worst.0 {
                worst = (d, -x);
            }
        }
    }
    Ok(worst)
}

/// `E_{φ,ψ}(M)` through the generic matrix-function engine.
pub fn ml_matrix(m: &ComplexMatrix, p: &MLParams) -> Result<ComplexMatrix> {
    p.check_supported()?;
    Ok(apply_scalar_function(m, |z| ml_scalar(z, p))?.value)
}

/// `E_{φ,ψ}(c·M)` reusing a prepared decomposition of `M`.
pub fn ml_matrix_scaled(plan: &FunctionPlan, c: f64, p: &MLParams) -> Result<ComplexMatrix> {
    Ok(plan.eval_scaled(c, &|z| ml_scalar(z, p))?.value)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::E;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn closed_form_anchors() {
        let e11 = ml_scalar(c(1.0), &MLParams::new(1.0, 1.0).unwrap()).unwrap();
        assert!((e11.re - E).abs() < 1e-15);
        let e12 = ml_scalar(c(-1.0), &MLParams::new(1.0, 2.0).unwrap()).unwrap();
        assert!((e12.re - (1.0 - (-1f64).exp())).abs() < 1e-15);
        let e21 = ml_scalar(c(-1.0), &MLParams::new(2.0, 1.0).unwrap()).unwrap();
        assert!((e21.re - 1f64.cos()).abs() < 1e-14);
    }

    #[test]
    fn zero_argument_is_reciprocal_gamma() {
        for (phi, psi) in [(0.3, 0.7), (1.0, 1.0), (1.5, 2.0), (2.0, 4.5)] {
            let p = MLParams::new(phi, psi).unwrap();
            assert_eq!(ml_scalar(c(0.0), &p).unwrap().re, recip_gamma(psi));
        }
    }

    #[test]
    fn unsupported_parameters() {
        assert!(MLParams::new(0.0, 1.0).is_err());
        assert!(MLParams::new(1.0, -1.0).is_err());
        let p = MLParams { phi: 2.5, psi: 1.0 };
        assert!(matches!(ml_scalar(c(1.0), &p), Err(Error::Domain(_))));
        let p = MLParams { phi: 1.0, psi: 6.0 };
        assert!(matches!(ml_scalar(c(1.0), &p), Err(Error::Domain(_))));
    }

    #[test]
    fn matrix_zero_and_diagonal() {
        let p = MLParams::new(1.0, 1.0).unwrap();
        let z = ml_matrix(&ComplexMatrix::zeros(2), &p).unwrap();
        assert!(z.max_abs_diff(&ComplexMatrix::identity(2)) <= 1e-15);

        let p = MLParams::new(1.0, 2.0).unwrap();
        let d = ml_matrix(&ComplexMatrix::from_real([[-1.0, 0.0], [0.0, -2.0]]), &p).unwrap();
        let want = ComplexMatrix::from_real([
            [1.0 - (-1f64).exp(), 0.0],
            [0.0, (1.0 - (-2f64).exp()) / 2.0],
        ]);
        assert!(d.max_abs_diff(&want) < 1e-15);
    }

    #[test]
    fn matrix_normal_complex_spectrum() {
        // −[[2,3],[−3,2]] = −2I − 3J with J² = −I; eigenvectors (1, ±i)/√2
        let p = MLParams::new(1.0, 2.0).unwrap();
        let m = ComplexMatrix::from_real([[-2.0, -3.0], [3.0, -2.0]]);
        let got = ml_matrix(&m, &p).unwrap();
        let f = |z: Complex64| (z.exp() - 1.0) / z;
        // J has eigenvalues ±i for eigenvectors (1, ±i); M = −2I − 3J → λ = −2 ∓ 3i
        let fp = f(Complex64::new(-2.0, -3.0));
        let fm = f(Complex64::new(-2.0, 3.0));
        // f(M) = (fp + fm)/2 I + (fp − fm)/(2i) J
        let a = (fp + fm) / 2.0;
        let b = (fp - fm) / Complex64::new(0.0, 2.0);
        let want = ComplexMatrix::from_rows(&[vec![a, b], vec![-b, a]]).unwrap();
        assert!(got.max_abs_diff(&want) < 1e-15, "{got:?} vs {want:?}");
    }

    #[test]
    fn strategy_regions() {
        let p = MLParams::new(0.5, 1.0).unwrap();
        assert_eq!(choose_strategy(c(-1.0), &p), Strategy::Series);
        assert_eq!(choose_strategy(c(-50.0), &p), Strategy::LaplaceInversion);
        assert_eq!(choose_strategy(c(-1e3), &p), Strategy::Asymptotic);
        assert_eq!(choose_strategy(c(-1e3), &MLParams::exponential()), Strategy::ClosedForm);
    }
}
