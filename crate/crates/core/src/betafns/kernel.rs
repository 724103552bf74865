use crate::error::Result;
use crate::matcore::{mat_exp, ComplexMatrix, EvalPath, FunctionPlan};
use crate::mittag::{ml_scalar, MLParams};

use super::problem::{BetaProblem, LogMeanWeights};

/// Arguments `c·R` are capped at this magnitude so that `x^{−η}` never
/// overflows; the regularising factors have long reached their limit there.
const SCALE_CAP: f64 = 1e280;

/// A matrix `M` prepared for repeated evaluation of `E_{φ,ψ}(c·M)`.
#[derive(Debug, Clone)]
pub struct ScaledFunction {
    matrix: ComplexMatrix,
    plan: FunctionPlan,
    ml: MLParams,
}

impl ScaledFunction {
    pub fn new(m: &ComplexMatrix, ml: MLParams) -> Result<Self> {
        ml.validate()?;
        Ok(Self {
            matrix: m.clone(),
            plan: FunctionPlan::new(m)?,
            ml,
        })
    }

    /// `E_{φ,ψ}(c·M)`.
    pub fn eval(&self, c: f64) -> Result<ComplexMatrix> {
        let c = c.clamp(-SCALE_CAP, SCALE_CAP);
        let exponential = self.ml == MLParams::exponential();
        if exponential && self.plan.path() == EvalPath::TaylorFallback {
            // a defective matrix: scaling and squaring beats a Taylor expansion
            return mat_exp(&self.matrix.scale_real(c));
        }
        Ok(self.plan.eval_scaled(c, &|z| ml_scalar(z, &self.ml))?.value)
    }
}

/// The regularising factors of a beta-type integrand.
#[derive(Debug, Clone)]
pub enum Regularizer {
    /// No factor (classical beta).
    None,
    /// `exp(−R/(x(1−x)))`.
    Exponential(ScaledFunction),
    /// `E_{φ,ψ}(−R x^{−η}) · E_{φ,ψ}(−S (1−x)^{−ξ})`.
    MittagLeffler {
        r: ScaledFunction,
        s: ScaledFunction,
        eta: f64,
        xi: f64,
    },
}

impl Regularizer {
    pub fn exponential(r: &ComplexMatrix) -> Result<Self> {
        Ok(Self::Exponential(ScaledFunction::new(r, MLParams::exponential())?))
    }

    pub fn mittag_leffler(
        r: &ComplexMatrix,
        s: &ComplexMatrix,
        eta: f64,
        xi: f64,
        ml: MLParams,
    ) -> Result<Self> {
        Ok(Self::MittagLeffler {
            r: ScaledFunction::new(r, ml)?,
            s: ScaledFunction::new(s, ml)?,
            eta,
            xi,
        })
    }
}

/// `ln x` given `x` and `1 − x`, accurate at both ends.
pub(crate) fn ln_accurate(x: f64, one_minus_x: f64) -> f64 {
    if x < 0.5 {
        x.ln()
    } else {
        (-one_minus_x).ln_1p()
    }
}

/// The integrand `w(x) · ln^m(x) ln^n(1−x) · x^{P−I}(1−x)^{Q−I} · F₁ · F₂`.
#[derive(Debug, Clone)]
pub struct Kernel {
    p_minus_i: ComplexMatrix,
    q_minus_i: ComplexMatrix,
    log_a: f64,
    log_b: f64,
    log_powers: (u32, u32),
    regularizer: Regularizer,
}

impl Kernel {
    pub fn new(p: &ComplexMatrix, q: &ComplexMatrix, regularizer: Regularizer) -> Result<Self> {
        p.check_same_dim(q)?;
        Ok(Self {
            p_minus_i: p.shift(-1.0),
            q_minus_i: q.shift(-1.0),
            log_a: 0.0,
            log_b: 0.0,
            log_powers: (0, 0),
            regularizer,
        })
    }

    /// The Mittag-Leffler kernel of `problem`, without weights.
    pub fn generalized(problem: &BetaProblem) -> Result<Self> {
        problem.validate()?;
        let ext = &problem.ext;
        Self::new(
            &problem.p,
            &problem.q,
            Regularizer::mittag_leffler(&ext.r, &ext.s, ext.eta, ext.xi, problem.ml)?,
        )
    }

    /// Multiplies by `a^{1−x} b^x`.
    pub fn weighted(mut self, w: &LogMeanWeights) -> Self {
        self.log_a = w.a.ln();
        self.log_b = w.b.ln();
        self
    }

    /// Multiplies by `ln^m(x) ln^n(1−x)`.
    pub fn with_log_powers(mut self, m: u32, n: u32) -> Self {
        self.log_powers = (m, n);
        self
    }

    /// The integrand at `x`, given `x` and `1 − x` separately.
    pub fn eval(&self, x: f64, one_minus_x: f64) -> Result<ComplexMatrix> {
        let lx = ln_accurate(x, one_minus_x);
        let lxc = ln_accurate(one_minus_x, x);
        let mut m = mat_exp(&self.p_minus_i.scale_real(lx))?
            .matmul(&mat_exp(&self.q_minus_i.scale_real(lxc))?);
        match &self.regularizer {
            Regularizer::None => {}
            Regularizer::Exponential(r) => {
                m = m.matmul(&r.eval(-1.0 / (x * one_minus_x))?);
            }
            Regularizer::MittagLeffler { r, s, eta, xi } => {
                let er = r.eval(-(-eta * lx).exp())?;
                let es = s.eval(-(-xi * lxc).exp())?;
                m = m.matmul(&er).matmul(&es);
            }
        }
        let weight = (one_minus_x * self.log_a + x * self.log_b).exp()
            * lx.powi(self.log_powers.0 as i32)
            * lxc.powi(self.log_powers.1 as i32);
        Ok(m.scale_real(weight))
    }
}
