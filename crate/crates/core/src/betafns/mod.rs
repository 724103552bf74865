//! Beta-type matrix functions and the logarithmic mean.
//!
//! Every matrix evaluator integrates a product of the form
//!
//! ```text
//! w(x) · x^{P−I} (1−x)^{Q−I} · F₁(x) · F₂(x)
//! ```
//!
//! over `(0, 1)` with tanh-sinh quadrature, keeping the factors in exactly that
//! left-to-right order. `w` is the scalar weight `a^{1−x} b^x` (or 1) and the
//! `F` are the regularising factors: none (classical), `exp(−R/(x(1−x)))`
//! (extended), or the Mittag-Leffler pair `E(−R x^{−η})`, `E(−S (1−x)^{−ξ})`
//! (generalized).
//!
//! [`scalar_gblf`] evaluates the scalar integral through Gauss-Legendre rules
//! on a graded mesh and serves as an independent oracle for `1×1` problems.

mod kernel;
mod problem;
mod reduction;
mod scalar;

pub use kernel::{Kernel, Regularizer, ScaledFunction};
pub use problem::{BetaProblem, ExtensionParams, LogMeanWeights};
pub use reduction::reduction_check;
pub use scalar::{scalar_gblf, ScalarGblfArgs};

use crate::error::Result;
use crate::matcore::ComplexMatrix;
use crate::quad::{integrate_01, QuadConfig, QuadResult};

/// Logarithmic mean `L(a, b) = (a − b)/(ln a − ln b)`, `L(a, a) = a`.
pub fn log_mean(w: &LogMeanWeights) -> f64 {
    let (a, b) = (w.a, w.b);
    if a == b {
        return a;
    }
    // (b − a)/ln(b/a) = a·r/ln(1 + r), accurate as b → a
    let r = (b - a) / a;
    a * r / r.ln_1p()
}

/// Integrates a kernel over `(0, 1)`.
pub fn integrate_kernel(kernel: &Kernel, quad: &QuadConfig) -> Result<QuadResult> {
    integrate_01(|p| kernel.eval(p.from_lo, p.to_hi), quad)
}

/// Classical beta matrix function `∫ x^{P−I}(1−x)^{Q−I} dx`.
pub fn cbmf(p: &ComplexMatrix, q: &ComplexMatrix, quad: &QuadConfig) -> Result<QuadResult> {
    integrate_kernel(&Kernel::new(p, q, Regularizer::None)?, quad)
}

/// Extended beta matrix function with the factor `exp(−R/(x(1−x)))`.
pub fn ebmf(p: &ComplexMatrix, q: &ComplexMatrix, r: &ComplexMatrix, quad: &QuadConfig) -> Result<QuadResult> {
    integrate_kernel(&Kernel::new(p, q, Regularizer::exponential(r)?)?, quad)
}

/// Extended beta-logarithmic matrix function: [`ebmf`] weighted by `a^{1−x} b^x`.
pub fn eblmf(
    w: &LogMeanWeights,
    p: &ComplexMatrix,
    q: &ComplexMatrix,
    r: &ComplexMatrix,
    quad: &QuadConfig,
) -> Result<QuadResult> {
    let kernel = Kernel::new(p, q, Regularizer::exponential(r)?)?.weighted(w);
    integrate_kernel(&kernel, quad)
}

/// Generalized beta matrix function; the weights of `problem` are ignored.
pub fn gbmf(problem: &BetaProblem) -> Result<QuadResult> {
    integrate_kernel(&Kernel::generalized(problem)?, &problem.quad)
}

/// Generalized beta-logarithmic matrix function.
pub fn gblmf(problem: &BetaProblem) -> Result<QuadResult> {
    let kernel = Kernel::generalized(problem)?.weighted(&problem.weights);
    integrate_kernel(&kernel, &problem.quad)
}

/// [`gblmf`] with the integrand multiplied by `ln^m(x) ln^n(1−x)`.
pub fn gblmf_log_moment(problem: &BetaProblem, m: u32, n: u32) -> Result<QuadResult> {
    let kernel = Kernel::generalized(problem)?
        .weighted(&problem.weights)
        .with_log_powers(m, n);
    integrate_kernel(&kernel, &problem.quad)
}
