use crate::betafns::{gblmf, gbmf, BetaProblem};
use crate::matcore::{op_norm, ComplexMatrix};

use super::{guard, CheckMode, ResidualReport};

const SUM_FLOOR: f64 = 1e-6;
const DOUBLE_SERIES_FLOOR: f64 = 1e-8;
/// Terms below this norm count as negligible.
const NEGLIGIBLE_TERM: f64 = 1e-12;
/// Allowed increase of a partial-sum residual between steps (quadrature noise).
/// Monotonicity is judged in the spectral norm, which unlike the infinity
/// norm does not oscillate with the phase of a rotating remainder.
const MONOTONE_SLACK: f64 = 1e-9;

/// Tail `Σ_{j>n} t_j` of a series whose last two term norms are `prev`
/// (term `n−1`) and `last` (term `n`), assuming `t_j ~ C·j^{−s}`, with a
/// safety factor 2. Infinite when the fitted decay is not summable.
pub fn power_law_tail(prev: f64, last: f64, n: usize) -> f64 {
    if last == 0.0 {
        return 0.0;
    }
    if n < 2 || prev <= last {
        return f64::INFINITY;
    }
    let s = (prev / last).ln() / (n as f64 / (n - 1) as f64).ln();
    if s <= 1.0 {
        return f64::INFINITY;
    }
    2.0 * last * n as f64 / (s - 1.0)
}

/// Monotone decrease is only expected when `E_{φ,ψ}(−x)` is completely
/// monotone (`0 < φ ≤ 1`, `ψ ≥ φ`); for `φ > 1` it changes sign and later
/// terms partly cancel earlier ones.
fn monotone_expected(problem: &BetaProblem) -> bool {
    problem.ml.phi <= 1.0 && problem.ml.psi >= problem.ml.phi
}

fn monotonicity_note(problem: &BetaProblem, what: &str, increase: Option<usize>) -> (bool, String) {
    match increase {
        None => (true, String::new()),
        Some(i) if monotone_expected(problem) => (false, format!("; residual grows at {what} {i}")),
        Some(i) => (
            true,
            format!("; residual grows at {what} {i} (not required: E(-x) changes sign for phi > 1)"),
        ),
    }
}

/// First index where the residual sequence grows by more than the slack.
fn first_increase(residuals: &[f64]) -> Option<usize> {
    residuals
        .windows(2)
        .position(|w| w[1] > w[0] + MONOTONE_SLACK)
        .map(|i| i + 1)
}

fn shifted_sum(name: &str, problem: &BetaProblem, terms: usize, shift: impl Fn(f64) -> (f64, f64)) -> ResidualReport {
    guard(name, CheckMode::Strict, || {
        let target = gblmf(problem)?;
        let mut converged = target.converged;
        let mut partial = ComplexMatrix::zeros(problem.dim());
        let mut norms = Vec::with_capacity(terms);
        let mut residuals = Vec::with_capacity(terms);
        let mut spectral = Vec::with_capacity(terms);
        let mut small_run = 0;
        for k in 0..terms.max(1) {
            let (dp, dq) = shift(k as f64);
            let term = gblmf(&problem.shifted(dp, dq))?;
            converged &= term.converged;
            partial += &term.value;
            norms.push(term.value.inf_norm());
            let remainder = &target.value - &partial;
            residuals.push(remainder.inf_norm());
            spectral.push(op_norm(&remainder));
            small_run = if norms[k] < NEGLIGIBLE_TERM { small_run + 1 } else { 0 };
            if small_run == 3 {
                break;
            }
        }
        let n = norms.len();
        let tail = if small_run == 3 {
            3.0 * NEGLIGIBLE_TERM
        } else if n >= 2 {
            power_law_tail(norms[n - 2], norms[n - 1], n)
        } else {
            f64::INFINITY
        };
        let residual = residuals[n - 1];
        let increase = first_increase(&spectral);
        let (monotone, note) = monotonicity_note(problem, "term", increase);
        let notes = format!("{n} terms, tail estimate {tail:.3e}, last term {:.3e}{note}", norms[n - 1]);
        let mut report = ResidualReport::strict(name, residual, SUM_FLOOR.max(tail), converged, notes);
        report.passed &= monotone;
        Ok(report)
    })
}

/// `BL(P,Q) = Σ_{k≥0} BL(P+I, Q+kI)`, truncated after `terms` terms.
pub fn check_sum_shift_q(problem: &BetaProblem, terms: usize) -> ResidualReport {
    shifted_sum("sum_shift_q", problem, terms, |k| (1.0, k))
}

/// `BL(P,Q) = Σ_{k≥0} BL(P+kI, Q+I)`, truncated after `terms` terms.
pub fn check_sum_shift_p(problem: &BetaProblem, terms: usize) -> ResidualReport {
    shifted_sum("sum_shift_p", problem, terms, |k| (k, 1.0))
}

/// `BL(a,b;P,Q) = Σ_{k,r≥0} B(P+kI, Q+rI)·(ln a)^r (ln b)^k/(k! r!)`.
///
/// Terms are added by anti-diagonals `k + r = d` with `k ≤ kmax`,
/// `r ≤ rmax`, stopping once the factorial tail bound
/// `max‖B‖·(e^{|ln a|+|ln b|} − Σ_{added} |coef|)` is negligible.
pub fn check_double_series(problem: &BetaProblem, kmax: u32, rmax: u32) -> ResidualReport {
    let name = "double_series";
    guard(name, CheckMode::Strict, || {
        let target = gblmf(problem)?;
        let scale = target.value.inf_norm().max(1.0);
        let (la, lb) = (problem.weights.a.ln(), problem.weights.b.ln());
        let total_mass = (la.abs() + lb.abs()).exp();
        let mut converged = target.converged;
        let mut partial = ComplexMatrix::zeros(problem.dim());
        let mut added_mass = 0.0;
        let mut b_max: f64 = 0.0;
        let mut residuals = Vec::new();
        let mut spectral = Vec::new();
        let mut evaluations = 0;
        let mut tail = f64::INFINITY;
        // (ln b)^k/k! and (ln a)^r/r! for every k and r in range
        let powers = |l: f64, n: u32| -> Vec<f64> {
            let mut v = vec![1.0];
            for j in 1..=n {
                let prev = v[j as usize - 1];
                v.push(prev * l / j as f64);
            }
            v
        };
        let (cb, ca) = (powers(lb, kmax), powers(la, rmax));
        for d in 0..=(kmax + rmax) {
            for k in d.saturating_sub(rmax)..=d.min(kmax) {
                let r = d - k;
                let coef = cb[k as usize] * ca[r as usize];
                if coef == 0.0 {
                    continue;
                }
                let term = gbmf(&problem.shifted(k as f64, r as f64))?;
                evaluations += 1;
                converged &= term.converged;
                b_max = b_max.max(term.value.inf_norm());
                partial += &term.value.scale_real(coef);
                added_mass += coef.abs();
            }
            let remainder = &target.value - &partial;
            residuals.push(remainder.inf_norm());
            spectral.push(op_norm(&remainder));
            tail = b_max * (total_mass - added_mass).max(0.0);
            if tail <= 1e-13 * scale {
                break;
            }
        }
        let residual = *residuals.last().expect("at least one diagonal");
        let increase = first_increase(&spectral);
        let (monotone, note) = monotonicity_note(problem, "diagonal", increase);
        let notes = format!(
            "{} diagonals, {evaluations} evaluations, factorial tail bound {tail:.3e}{note}",
            residuals.len()
        );
        let mut report = ResidualReport::strict(name, residual, DOUBLE_SERIES_FLOOR.max(tail), converged, notes);
        report.passed &= monotone;
        Ok(report)
    })
}
