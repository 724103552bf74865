//! The three substituted integrals for `BL(a,b;P,Q)`:
//!
//! * `x = sin²θ` on `(0, π/2)`,
//! * `x = t/(1+t)` on `(0, ∞)`,
//! * `x = (1+t)/2` on `(−1, 1)`.
//!
//! The substitutions turn `x^{P−I}(1−x)^{Q−I}` into
//! `t^{P−I}(1+t)^{−P}(1+t)^{−Q}` and `2^{I−P}(1+t)^{P−I}·2^{I−Q}(1−t)^{Q−I}/2`,
//! which collapse to the shorter forms `t^{P−I}(1+t)^{−(P+Q)}` and
//! `2^I 2^{−(P+Q)}(1+t)^{P−I}(1−t)^{Q−I}` only when `P` and `Q` commute. Both
//! variants are evaluated; the collapsed ones are strict only for commuting
//! `P, Q`.

use std::f64::consts::FRAC_PI_2;

use crate::betafns::{gblmf, BetaProblem, ScaledFunction};
use crate::error::Result;
use crate::matcore::{mat_exp, real_power, ComplexMatrix};
use crate::quad::{integrate_interval, integrate_semi_inf, QuadResult};

use super::{guard, pairwise_commute, scaled_tol, CheckMode, ResidualReport};

const REPRESENTATION_TOL: f64 = 1e-7;

struct Pieces {
    p: ComplexMatrix,
    q: ComplexMatrix,
    identity: ComplexMatrix,
    r: ScaledFunction,
    s: ScaledFunction,
    eta: f64,
    xi: f64,
    log_a: f64,
    log_b: f64,
}

impl Pieces {
    fn new(problem: &BetaProblem) -> Result<Self> {
        Ok(Self {
            p: problem.p.clone(),
            q: problem.q.clone(),
            identity: ComplexMatrix::identity(problem.dim()),
            r: ScaledFunction::new(&problem.ext.r, problem.ml)?,
            s: ScaledFunction::new(&problem.ext.s, problem.ml)?,
            eta: problem.ext.eta,
            xi: problem.ext.xi,
            log_a: problem.weights.a.ln(),
            log_b: problem.weights.b.ln(),
        })
    }

    /// `M^{power}` for a positive scalar given by its logarithm.
    fn pow(&self, m: &ComplexMatrix, log_base: f64) -> Result<ComplexMatrix> {
        mat_exp(&m.scale_real(log_base))
    }

    fn p_minus_i(&self) -> ComplexMatrix {
        &self.p - &self.identity
    }

    fn q_minus_i(&self) -> ComplexMatrix {
        &self.q - &self.identity
    }

    /// `E(−R·e^{lr}) E(−S·e^{ls})`.
    fn regularizers(&self, lr: f64, ls: f64) -> Result<ComplexMatrix> {
        Ok(self.r.eval(-lr.exp())?.matmul(&self.s.eval(-ls.exp())?))
    }

    /// `2a (b/a)^{sin²θ} sin^{2P−I}θ cos^{2Q−I}θ E(−R csc^{2η}θ) E(−S sec^{2ξ}θ)`.
    fn trig(&self, theta: f64, to_end: f64) -> Result<ComplexMatrix> {
        let (sn, cs) = (theta.sin(), to_end.sin());
        let (ls, lc) = (sn.ln(), cs.ln());
        let two_p = &self.p.scale_real(2.0) - &self.identity;
        let two_q = &self.q.scale_real(2.0) - &self.identity;
        let m = self
            .pow(&two_p, ls)?
            .matmul(&self.pow(&two_q, lc)?)
            .matmul(&self.regularizers(-2.0 * self.eta * ls, -2.0 * self.xi * lc)?);
        let weight = 2.0 * (self.log_a + (self.log_b - self.log_a) * sn * sn).exp();
        Ok(m.scale_real(weight))
    }

    /// The integrand on `(0, ∞)`; `split` keeps `(1+t)^{−P}(1+t)^{−Q}` apart.
    fn semi_inf(&self, t: f64, split: bool) -> Result<ComplexMatrix> {
        let (lt, l1t) = (t.ln(), t.ln_1p());
        let power = if split {
            self.pow(&self.p, -l1t)?.matmul(&self.pow(&self.q, -l1t)?)
        } else {
            self.pow(&(&self.p + &self.q), -l1t)?
        };
        let m = self
            .pow(&self.p_minus_i(), lt)?
            .matmul(&power)
            .matmul(&self.regularizers(self.eta * t.recip().ln_1p(), self.xi * l1t)?);
        let x = t / (1.0 + t);
        let weight = (self.log_a * (1.0 - x) + self.log_b * x).exp();
        Ok(m.scale_real(weight))
    }

    /// The integrand on `(−1, 1)` at `t`, given `1 + t` and `1 − t`; `split`
    /// keeps the powers of 2 next to the powers they come from.
    fn symmetric(&self, t: f64, plus: f64, minus: f64, split: bool) -> Result<ComplexMatrix> {
        let ln2 = std::f64::consts::LN_2;
        let (lp, lm) = (plus.ln(), minus.ln());
        let (pm, qm) = (self.p_minus_i(), self.q_minus_i());
        let m = if split {
            real_power(2.0, &(&self.identity - &self.p))?
                .matmul(&self.pow(&pm, lp)?)
                .matmul(&real_power(2.0, &(&self.identity - &self.q))?)
                .matmul(&self.pow(&qm, lm)?)
                .scale_real(0.5)
        } else {
            real_power(2.0, &(&self.p + &self.q).scale_real(-1.0))?
                .scale_real(2.0)
                .matmul(&self.pow(&pm, lp)?)
                .matmul(&self.pow(&qm, lm)?)
        };
        let m = m.matmul(&self.regularizers(-self.eta * (lp - ln2), -self.xi * (lm - ln2))?);
        let weight = (0.5 * (self.log_a + self.log_b) + 0.5 * t * (self.log_b - self.log_a)).exp();
        Ok(m.scale_real(weight))
    }
}

fn compare(
    name: &str,
    mode: CheckMode,
    canonical: &QuadResult,
    rep: Result<QuadResult>,
    notes: &str,
) -> ResidualReport {
    guard(name, mode, || {
        let rep = rep?;
        Ok(ResidualReport::new(
            name,
            mode,
            (&rep.value - &canonical.value).inf_norm(),
            scaled_tol(REPRESENTATION_TOL, &canonical.value),
            rep.converged && canonical.converged,
            notes,
        ))
    })
}

/// Each substituted integral against the canonical evaluation.
pub fn check_integral_reps(problem: &BetaProblem) -> Vec<ResidualReport> {
    const NAMES: [&str; 5] = [
        "integral_rep_trig",
        "integral_rep_semi_inf",
        "integral_rep_symmetric",
        "integral_rep_semi_inf_collapsed",
        "integral_rep_symmetric_collapsed",
    ];
    let commuting = pairwise_commute(&[&problem.p, &problem.q]);
    let collapsed_mode = if commuting { CheckMode::Strict } else { CheckMode::ReportOnly };
    let modes = [
        CheckMode::Strict,
        CheckMode::Strict,
        CheckMode::Strict,
        collapsed_mode,
        collapsed_mode,
    ];
    let setup = Pieces::new(problem).and_then(|pieces| Ok((pieces, gblmf(problem)?)));
    let (pieces, canonical) = match setup {
        Ok(v) => v,
        Err(e) => {
            return NAMES
                .iter()
                .zip(modes)
                .map(|(n, m)| ResidualReport::errored(*n, m, &e))
                .collect()
        }
    };
    let quad = &problem.quad;
    let collapsed_note = if commuting {
        "P and Q commute"
    } else {
        "P and Q do not commute; the collapsed power needs PQ = QP"
    };
    vec![
        compare(
            NAMES[0],
            modes[0],
            &canonical,
            integrate_interval(|th| pieces.trig(th.value, th.to_hi), 0.0, FRAC_PI_2, quad),
            "x = sin^2 theta",
        ),
        compare(
            NAMES[1],
            modes[1],
            &canonical,
            integrate_semi_inf(|t| pieces.semi_inf(t.value, true), quad),
            "x = t/(1+t), (1+t)^(-P) (1+t)^(-Q)",
        ),
        compare(
            NAMES[2],
            modes[2],
            &canonical,
            integrate_interval(|t| pieces.symmetric(t.value, t.from_lo, t.to_hi, true), -1.0, 1.0, quad),
            "x = (1+t)/2, 2^(I-P) (1+t)^(P-I) 2^(I-Q) (1-t)^(Q-I) / 2",
        ),
        compare(
            NAMES[3],
            modes[3],
            &canonical,
            integrate_semi_inf(|t| pieces.semi_inf(t.value, false), quad),
            collapsed_note,
        ),
        compare(
            NAMES[4],
            modes[4],
            &canonical,
            integrate_interval(|t| pieces.symmetric(t.value, t.from_lo, t.to_hi, false), -1.0, 1.0, quad),
            collapsed_note,
        ),
    ]
}
