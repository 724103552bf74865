//! Residual checks of the functional relations satisfied by the generalized
//! beta-logarithmic matrix function.
//!
//! Every check evaluates both sides independently and reports the infinity
//! norm of their difference as a [`ResidualReport`]. Checks whose validity
//! depends on commutativity or on a positivity regime are marked strict only
//! when the inputs satisfy that hypothesis and report-only otherwise.

mod algebraic;
mod derivative;
mod report;
mod representations;
mod series;

pub use algebraic::{
    check_equal_weights, check_exp_bound, check_finite_sum, check_homogeneity, check_inequality,
    check_recurrence, check_symmetry,
};
pub use derivative::{check_derivative, finite_difference_step};
pub use report::{CheckMode, ResidualReport, Summary};
pub use representations::check_integral_reps;
pub use series::{check_double_series, check_sum_shift_p, check_sum_shift_q, power_law_tail};

use serde::{Deserialize, Serialize};

use crate::betafns::{reduction_check, BetaProblem};
use crate::error::Result;
use crate::matcore::{commute, is_positive_stable, ComplexMatrix};

/// Tolerance used to decide whether two inputs commute.
pub const COMMUTE_TOL: f64 = 1e-10;

/// Settings of [`run_all`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct VerifyConfig {
    /// Scale factor of the homogeneity check.
    pub homogeneity_c: f64,
    /// Terms of each single shifted series.
    pub sum_terms: usize,
    /// Largest shift of either argument in the double series.
    pub double_series_max: u32,
    /// Finite sums are checked for `m = 1..=finite_sum_max_m`.
    pub finite_sum_max_m: u32,
    /// `(m, n)` orders of the log-moment derivative checks.
    pub derivative_orders: Vec<(u32, u32)>,
    /// Repeat the recurrence, finite sum, integral representations and
    /// derivative checks at unit weights `a = b = 1`.
    pub unit_weight_variants: bool,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        Self {
            homogeneity_c: 2.0,
            sum_terms: 40,
            double_series_max: 18,
            finite_sum_max_m: 4,
            derivative_orders: vec![(0, 0), (1, 0), (0, 1), (1, 1)],
            unit_weight_variants: true,
        }
    }
}

/// Runs every check on `problem` in a fixed order.
pub fn run_all(problem: &BetaProblem, cfg: &VerifyConfig) -> Result<Vec<ResidualReport>> {
    problem.validate()?;
    let unit = problem.with_weights(1.0, 1.0);
    let mut out = vec![
        check_symmetry(problem),
        check_equal_weights(problem),
        check_homogeneity(problem, cfg.homogeneity_c),
    ];
    out.extend(check_recurrence(problem));
    out.push(check_inequality(problem));
    out.push(check_exp_bound(problem));
    out.push(check_sum_shift_q(problem, cfg.sum_terms));
    out.push(check_sum_shift_p(problem, cfg.sum_terms));
    out.push(check_double_series(problem, cfg.double_series_max, cfg.double_series_max));
    for m in 1..=cfg.finite_sum_max_m {
        out.push(check_finite_sum(problem, m));
    }
    out.extend(check_integral_reps(problem));
    for &(m, n) in &cfg.derivative_orders {
        out.push(check_derivative(problem, m, n));
    }
    if cfg.unit_weight_variants && (problem.weights.a, problem.weights.b) != (1.0, 1.0) {
        let suffix = |mut r: ResidualReport| {
            r.name.push_str("_unit_weights");
            r
        };
        out.push(suffix(check_finite_sum(&unit, 2)));
        out.extend(check_integral_reps(&unit).into_iter().map(suffix));
        out.push(suffix(check_derivative(&unit, 1, 1)));
    }
    out.extend(reduction_check(problem)?);
    Ok(out)
}

/// Whether every pair in `ms` commutes to [`COMMUTE_TOL`].
pub fn pairwise_commute(ms: &[&ComplexMatrix]) -> bool {
    ms.iter().enumerate().all(|(i, a)| {
        ms[i + 1..]
            .iter()
            .all(|b| commute(a, b, COMMUTE_TOL).unwrap_or(false))
    })
}

/// Turns an evaluation failure into an unconverged report.
pub(crate) fn guard(name: &str, mode: CheckMode, f: impl FnOnce() -> Result<ResidualReport>) -> ResidualReport {
    f().unwrap_or_else(|e| ResidualReport::errored(name, mode, e))
}

/// An absolute tolerance widened for large reference values.
pub(crate) fn scaled_tol(tol: f64, reference: &ComplexMatrix) -> f64 {
    tol * reference.inf_norm().max(1.0)
}

/// Mode of a check that drops the regularising factors: without them the
/// integral exists only for positive stable `P` and `Q`.
pub fn unregularized_mode(problem: &BetaProblem) -> (CheckMode, &'static str) {
    let stable = [&problem.p, &problem.q]
        .iter()
        .all(|m| is_positive_stable(m, 0.0).unwrap_or(false));
    if stable {
        (CheckMode::Strict, "")
    } else {
        (
            CheckMode::ReportOnly,
            "; P or Q is not positive stable, so the unregularized integral diverges",
        )
    }
}
