use crate::betafns::{cbmf, ebmf, gblmf, gbmf, BetaProblem, ExtensionParams};
use crate::error::{Error, Result};
use crate::matcore::{eigenvalues, op_norm, ComplexMatrix};
use crate::mittag::MLParams;

use super::{guard, pairwise_commute, scaled_tol, unregularized_mode, CheckMode, ResidualReport};

const ALGEBRAIC_TOL: f64 = 1e-8;
const SYMMETRY_TOL: f64 = 1e-6;
const FINITE_SUM_TOL: f64 = 1e-7;
const INEQUALITY_SLACK: f64 = 1e-9;

/// `BL(a,b;P,Q; R,S,η,ξ) = BL(b,a;Q,P; S,R,ξ,η)`, strict only when
/// `P, Q, R, S` pairwise commute.
pub fn check_symmetry(problem: &BetaProblem) -> ResidualReport {
    let commuting = pairwise_commute(&[&problem.p, &problem.q, &problem.ext.r, &problem.ext.s]);
    let (mode, notes) = if commuting {
        (CheckMode::Strict, "P, Q, R, S pairwise commute")
    } else {
        (
            CheckMode::ReportOnly,
            "P, Q, R, S do not pairwise commute; the reflection x -> 1 - x reorders non-commuting factors",
        )
    };
    guard("symmetry", mode, || {
        let lhs = gblmf(problem)?;
        let rhs = gblmf(&problem.mirrored())?;
        Ok(ResidualReport::new(
            "symmetry",
            mode,
            (&lhs.value - &rhs.value).inf_norm(),
            scaled_tol(SYMMETRY_TOL, &lhs.value),
            lhs.converged && rhs.converged,
            notes,
        ))
    })
}

/// `BL(a,a;P,Q) = a·B(P,Q)`, evaluated at the problem's `a` for both weights.
pub fn check_equal_weights(problem: &BetaProblem) -> ResidualReport {
    guard("equal_weights", CheckMode::Strict, || {
        let a = problem.weights.a;
        let lhs = gblmf(&problem.with_weights(a, a))?;
        let rhs = gbmf(problem)?;
        let rhs_value = rhs.value.scale_real(a);
        Ok(ResidualReport::strict(
            "equal_weights",
            (&lhs.value - &rhs_value).inf_norm(),
            scaled_tol(ALGEBRAIC_TOL, &rhs_value),
            lhs.converged && rhs.converged,
            format!("a = b = {a}"),
        ))
    })
}

/// `BL(c·a, c·b; P,Q) = c·BL(a,b;P,Q)`.
pub fn check_homogeneity(problem: &BetaProblem, c: f64) -> ResidualReport {
    guard("homogeneity", CheckMode::Strict, || {
        if !(c > 0.0 && c.is_finite()) {
            return Err(Error::Domain(format!("scale factor must be positive, got {c}")));
        }
        let w = problem.weights;
        let lhs = gblmf(&problem.with_weights(c * w.a, c * w.b))?;
        let rhs = gblmf(problem)?;
        let rhs_value = rhs.value.scale_real(c);
        Ok(ResidualReport::strict(
            "homogeneity",
            (&lhs.value - &rhs_value).inf_norm(),
            scaled_tol(ALGEBRAIC_TOL, &rhs_value),
            lhs.converged && rhs.converged,
            format!("c = {c}"),
        ))
    })
}

fn recurrence_report(name: &str, problem: &BetaProblem, mode: CheckMode, notes: &str) -> ResidualReport {
    guard(name, mode, || {
        let base = gblmf(problem)?;
        let up_p = gblmf(&problem.shifted(1.0, 0.0))?;
        let up_q = gblmf(&problem.shifted(0.0, 1.0))?;
        Ok(ResidualReport::new(
            name,
            mode,
            (&(&up_p.value + &up_q.value) - &base.value).inf_norm(),
            scaled_tol(ALGEBRAIC_TOL, &base.value),
            base.converged && up_p.converged && up_q.converged,
            notes,
        ))
    })
}

fn with_extension(problem: &BetaProblem, r: ComplexMatrix, s: ComplexMatrix) -> BetaProblem {
    BetaProblem {
        ext: ExtensionParams {
            r,
            s,
            eta: 1.0,
            xi: 1.0,
        },
        ml: MLParams::exponential(),
        ..problem.clone()
    }
}

/// `BL(P+I,Q) + BL(P,Q+I) = BL(P,Q)` and its specialisations to unit
/// weights, the exponential regulariser `S = R`, and no regulariser.
pub fn check_recurrence(problem: &BetaProblem) -> Vec<ResidualReport> {
    let zero = ComplexMatrix::zeros(problem.dim());
    let r = problem.ext.r.clone();
    let exponential = with_extension(problem, r.clone(), r);
    let classical_log = with_extension(problem, zero.clone(), zero);
    let (bare, bare_note) = unregularized_mode(problem);
    let strict = CheckMode::Strict;
    vec![
        recurrence_report("recurrence", problem, strict, ""),
        recurrence_report("recurrence_unit_weights", &problem.with_weights(1.0, 1.0), strict, "a = b = 1"),
        recurrence_report(
            "recurrence_exponential",
            &exponential,
            strict,
            "unit Mittag-Leffler parameters, S = R",
        ),
        recurrence_report(
            "recurrence_classical_log",
            &classical_log,
            bare,
            &format!("unit Mittag-Leffler parameters, R = S = 0{bare_note}"),
        ),
        recurrence_report(
            "recurrence_classical",
            &classical_log.with_weights(1.0, 1.0),
            bare,
            &format!("a = b = 1, unit Mittag-Leffler parameters, R = S = 0{bare_note}"),
        ),
    ]
}

fn binomial(m: u32, k: u32) -> f64 {
    (0..k).fold(1.0, |acc, i| acc * (m - i) as f64 / (i + 1) as f64)
}

/// `BL(P,Q) = Σ_{k=0}^{m} C(m,k)·BL(P+kI, Q+(m−k)I)`.
pub fn check_finite_sum(problem: &BetaProblem, m: u32) -> ResidualReport {
    let name = format!("finite_sum_m{m}");
    guard(&name, CheckMode::Strict, || {
        let base = gblmf(problem)?;
        let mut converged = base.converged;
        let mut sum = ComplexMatrix::zeros(problem.dim());
        for k in 0..=m {
            let term = gblmf(&problem.shifted(k as f64, (m - k) as f64))?;
            converged &= term.converged;
            sum += &term.value.scale_real(binomial(m, k));
        }
        Ok(ResidualReport::strict(
            name.as_str(),
            (&sum - &base.value).inf_norm(),
            scaled_tol(FINITE_SUM_TOL, &base.value),
            converged,
            format!("{} shifted evaluations", m + 1),
        ))
    })
}

fn hermitian_psd(m: &ComplexMatrix) -> Result<bool> {
    Ok(m.is_hermitian(1e-12) && eigenvalues(m)?.iter().all(|l| l.re >= -1e-12))
}

/// The regime where the integrand is a simultaneously diagonalisable
/// positive family, so the scalar bounds carry over to the spectral norm.
fn inequality_regime(problem: &BetaProblem) -> Result<bool> {
    let (p, q, r, s) = (&problem.p, &problem.q, &problem.ext.r, &problem.ext.s);
    let ml = problem.ml;
    Ok(p.is_hermitian(1e-12)
        && q.is_hermitian(1e-12)
        && hermitian_psd(r)?
        && hermitian_psd(s)?
        && pairwise_commute(&[p, q, r, s])
        && ml.phi <= 1.0
        && ml.psi >= ml.phi)
}

/// `min(a,b)·‖B(P,Q)‖ ≤ ‖BL(a,b;P,Q)‖ ≤ max(a,b)·‖B(P,Q)‖`.
///
/// Strict in the Hermitian commuting positive regime, measured in the
/// spectral norm; report-only elsewhere. The residual is the amount by which
/// either bound is violated.
pub fn check_inequality(problem: &BetaProblem) -> ResidualReport {
    let regime = inequality_regime(problem).unwrap_or(false);
    let mode = if regime { CheckMode::Strict } else { CheckMode::ReportOnly };
    guard("inequality", mode, || {
        let l = gblmf(problem)?;
        let b = gbmf(problem)?;
        let (lo, hi) = (
            problem.weights.a.min(problem.weights.b),
            problem.weights.a.max(problem.weights.b),
        );
        let violation = |nl: f64, nb: f64| (lo * nb - nl).max(nl - hi * nb).max(0.0);
        let (nl2, nb2) = (op_norm(&l.value), op_norm(&b.value));
        let (nli, nbi) = (l.value.inf_norm(), b.value.inf_norm());
        let notes = format!(
            "{}; spectral norm: {lo}*{nb2:.6e} <= {nl2:.6e} <= {hi}*{nb2:.6e}; infinity norm: {lo}*{nbi:.6e} <= {nli:.6e} <= {hi}*{nbi:.6e}",
            if regime {
                "Hermitian commuting positive regime"
            } else {
                "outside the Hermitian commuting positive regime"
            }
        );
        Ok(ResidualReport::new(
            "inequality",
            mode,
            violation(nl2, nb2),
            INEQUALITY_SLACK,
            l.converged && b.converged,
            notes,
        ))
    })
}

/// Records `‖B^R(P,Q)‖` against `exp(−4‖R‖)·‖B(P,Q)‖`. Report-only; the
/// residual is the excess of the left side over the right (0 when the bound
/// holds).
pub fn check_exp_bound(problem: &BetaProblem) -> ResidualReport {
    let (p, q, r) = (&problem.p, &problem.q, &problem.ext.r);
    guard("exp_bound", CheckMode::ReportOnly, || {
        let lhs = ebmf(p, q, r, &problem.quad)?;
        let base = cbmf(p, q, &problem.quad)?;
        let left = lhs.value.inf_norm();
        let right = (-4.0 * r.inf_norm()).exp() * base.value.inf_norm();
        let relation = if left <= right { "bound holds" } else { "bound violated" };
        let commuting = if pairwise_commute(&[p, q, r]) {
            "P, Q, R commute"
        } else {
            "P, Q, R do not all commute"
        };
        Ok(ResidualReport::report_only(
            "exp_bound",
            (left - right).max(0.0),
            0.0,
            lhs.converged && base.converged,
            format!("{relation}: {left:.6e} vs {right:.6e}; {commuting}"),
        ))
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomials() {
        assert_eq!(binomial(4, 0), 1.0);
        assert_eq!(binomial(4, 2), 6.0);
        assert_eq!(binomial(5, 5), 1.0);
    }
}
