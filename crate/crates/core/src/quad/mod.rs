//! Tanh-sinh quadrature of matrix-valued integrands.
//!
//! On `(0, 1)` the substitution `x = 1/(1 + e^{−π sinh t})` turns algebraic and
//! logarithmic endpoint singularities into doubly exponentially decaying
//! integrands. Level `ℓ` uses step `2^{−ℓ}` and reuses every node of the
//! previous level; the difference of successive levels is the error estimate.
//!
//! Integrands receive an [`Abscissa`] carrying the distances to both interval
//! ends, each computed without cancellation, so that factors such as `(1−x)^Q`
//! stay accurate next to `x = 1`.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matcore::ComplexMatrix;

/// Quadrature settings.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct QuadConfig {
    pub abs_tol: f64,
    pub rel_tol: f64,
    pub max_level: u32,
    /// Nodes closer than this to an end of `(0, 1)` are dropped.
    pub clip_eps: f64,
    /// Convergence is not declared before this level.
    pub min_level: u32,
}

impl Default for QuadConfig {
    fn default() -> Self {
        Self {
            abs_tol: 1e-10,
            rel_tol: 1e-8,
            max_level: 12,
            clip_eps: 1e-30,
            min_level: 3,
        }
    }
}

impl QuadConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.abs_tol > 0.0 && self.abs_tol.is_finite()) {
            return Err(Error::Domain(format!("abs_tol must be positive, got {}", self.abs_tol)));
        }
        if !(self.rel_tol > 0.0 && self.rel_tol.is_finite()) {
            return Err(Error::Domain(format!("rel_tol must be positive, got {}", self.rel_tol)));
        }
        if !(3..=20).contains(&self.max_level) {
            return Err(Error::Domain(format!(
                "max_level must lie in [3, 20], got {}",
                self.max_level
            )));
        }
        if !(self.clip_eps > 0.0 && self.clip_eps < 0.5) {
            return Err(Error::Domain(format!("clip_eps must lie in (0, 0.5), got {}", self.clip_eps)));
        }
        if self.min_level > self.max_level {
            return Err(Error::Domain(format!(
                "min_level {} exceeds max_level {}",
                self.min_level, self.max_level
            )));
        }
        Ok(())
    }

    /// Both tolerances divided by `factor`.
    pub fn tightened(&self, factor: f64) -> Self {
        Self {
            abs_tol: self.abs_tol / factor,
            rel_tol: self.rel_tol / factor,
            ..*self
        }
    }

    /// The same rule with convergence forced at exactly `level`.
    ///
    /// Useful when several integrals must share one discretisation, as in
    /// finite differences.
    pub fn fixed_level(&self, level: u32) -> Self {
        Self {
            min_level: level,
            max_level: level.max(3),
            abs_tol: f64::MAX,
            rel_tol: f64::MAX,
            ..*self
        }
    }
}

/// A quadrature outcome.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct QuadResult {
    pub value: ComplexMatrix,
    /// `‖I_ℓ − I_{ℓ−1}‖∞` at the final level.
    pub err_estimate: f64,
    pub n_evals: usize,
    pub converged: bool,
    pub level: u32,
}

/// A quadrature node with its distances to both ends of the interval.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Abscissa {
    pub value: f64,
    pub from_lo: f64,
    pub to_hi: f64,
}

/// `∫₀¹ f(x) dx`; `from_lo = x` and `to_hi = 1 − x`.
pub fn integrate_01<F>(f: F, cfg: &QuadConfig) -> Result<QuadResult>
where
    F: Fn(Abscissa) -> Result<ComplexMatrix>,
{
    cfg.validate()?;
    let t_max = (((1.0 / cfg.clip_eps) - 1.0).ln() / PI).asinh();

    let mut n_evals = 0;
    // Σ w(t_k) f(x(t_k)) over the nodes of the current level, without the factor h
    let mut raw: Option<ComplexMatrix> = None;
    let add_node = |t: f64, acc: &mut Option<ComplexMatrix>, n_evals: &mut usize| -> Result<()> {
        let s = PI / 2.0 * t.sinh();
        let (x, xc) = if s >= 0.0 {
            let e = (-2.0 * s).exp();
            (1.0 / (1.0 + e), e / (1.0 + e))
        } else {
            let e = (2.0 * s).exp();
            (e / (1.0 + e), 1.0 / (1.0 + e))
        };
        if x.min(xc) < cfg.clip_eps {
            return Ok(());
        }
        let w = PI * t.cosh() * x * xc;
        let point = Abscissa {
            value: x,
            from_lo: x,
            to_hi: xc,
        };
        let fx = f(point)?;
        *n_evals += 1;
        if !fx.is_finite() {
            return Err(Error::Evaluation(format!("integrand is not finite at x = {x:e} (1 - x = {xc:e})")));
        }
        let term = fx.scale_real(w);
        match acc {
            Some(a) => {
                a.check_same_dim(&term)?;
                *a += &term;
            }
            None => *acc = Some(term),
        }
        Ok(())
    };

    // level 0: t = 0, ±1, ±2, ...
    add_node(0.0, &mut raw, &mut n_evals)?;
    let mut k = 1;
    while k as f64 <= t_max {
        add_node(k as f64, &mut raw, &mut n_evals)?;
        add_node(-(k as f64), &mut raw, &mut n_evals)?;
        k += 1;
    }
    let raw0 = raw.clone().expect("the midpoint is never clipped");
    let mut estimate = raw0.clone();
    let mut err = f64::INFINITY;
    let mut level = 0;

    while level < cfg.max_level {
        level += 1;
        let h = 0.5f64.powi(level as i32);
        let mut odd: Option<ComplexMatrix> = None;
        let mut k: u64 = 1;
        while k as f64 * h <= t_max {
            let t = k as f64 * h;
            add_node(t, &mut odd, &mut n_evals)?;
            add_node(-t, &mut odd, &mut n_evals)?;
            k += 2;
        }
        let prev = estimate.clone();
        let total = raw.as_ref().unwrap() + &odd.unwrap_or_else(|| ComplexMatrix::zeros(raw0.dim()));
        estimate = total.scale_real(h);
        raw = Some(total);
        err = (&estimate - &prev).inf_norm();
        if level >= cfg.min_level && err <= cfg.abs_tol.max(cfg.rel_tol * estimate.inf_norm()) {
            return Ok(QuadResult {
                value: estimate,
                err_estimate: err,
                n_evals,
                converged: true,
                level,
            });
        }
    }
    Ok(QuadResult {
        value: estimate,
        err_estimate: err,
        n_evals,
        converged: false,
        level,
    })
}

/// `∫₀^∞ f(t) dt` through `t = x/(1 − x)`.
pub fn integrate_semi_inf<F>(f: F, cfg: &QuadConfig) -> Result<QuadResult>
where
    F: Fn(Abscissa) -> Result<ComplexMatrix>,
{
    integrate_01(
        |p| {
            let t = p.from_lo / p.to_hi;
            let jac = 1.0 / (p.to_hi * p.to_hi);
            let point = Abscissa {
                value: t,
                from_lo: t,
                to_hi: f64::INFINITY,
            };
            Ok(f(point)?.scale_real(jac))
        },
        cfg,
    )
}

/// `∫_lo^hi f(t) dt` for finite `lo < hi`.
pub fn integrate_interval<F>(f: F, lo: f64, hi: f64, cfg: &QuadConfig) -> Result<QuadResult>
where
    F: Fn(Abscissa) -> Result<ComplexMatrix>,
{
    if !(lo.is_finite() && hi.is_finite() && lo < hi) {
        return Err(Error::Domain(format!("invalid interval [{lo}, {hi}]")));
    }
    let width = hi - lo;
    let mut out = integrate_01(
        |p| {
            let point = Abscissa {
                value: if p.from_lo <= p.to_hi {
                    lo + width * p.from_lo
                } else {
                    hi - width * p.to_hi
                },
                from_lo: width * p.from_lo,
                to_hi: width * p.to_hi,
            };
            f(point)
        },
        cfg,
    )?;
    out.value = out.value.scale_real(width);
    out.err_estimate *= width;
    Ok(out)
}
