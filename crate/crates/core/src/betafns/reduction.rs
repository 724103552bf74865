use crate::error::Result;
use crate::identities::{unregularized_mode, CheckMode, ResidualReport};
use crate::matcore::ComplexMatrix;
use crate::mittag::MLParams;
use crate::quad::QuadResult;

use super::problem::{BetaProblem, ExtensionParams, LogMeanWeights};
use super::{cbmf, ebmf, eblmf, gblmf, gbmf, log_mean};

/// Tolerance for every parameter reduction.
pub const REDUCTION_TOL: f64 = 1e-8;

/// `φ = ψ = η = ξ = 1` with the given `R` and `S`.
fn unit_parameters(problem: &BetaProblem, r: ComplexMatrix, s: ComplexMatrix) -> BetaProblem {
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

fn compare(
    name: &str,
    mode: CheckMode,
    lhs: Result<QuadResult>,
    rhs: Result<QuadResult>,
    notes: &str,
) -> ResidualReport {
    match (lhs, rhs) {
        (Ok(l), Ok(r)) => ResidualReport::new(
            name,
            mode,
            (&l.value - &r.value).inf_norm(),
            REDUCTION_TOL,
            l.converged && r.converged,
            notes,
        ),
        (Err(e), _) | (_, Err(e)) => ResidualReport::errored(name, mode, e),
    }
}

/// Residuals of every parameter reduction of the generalized functions to
/// their classical relatives, evaluated on the shapes of `problem`.
pub fn reduction_check(problem: &BetaProblem) -> Result<Vec<ResidualReport>> {
    problem.validate()?;
    let k = problem.dim();
    let (p, q, r) = (&problem.p, &problem.q, &problem.ext.r);
    let quad = &problem.quad;
    let zero = ComplexMatrix::zeros(k);
    let w = problem.weights;
    let unit_w = LogMeanWeights::unit();

    let same_r = unit_parameters(problem, r.clone(), r.clone());
    let trivial = unit_parameters(problem, zero.clone(), zero.clone());
    let strict = CheckMode::Strict;
    let (bare, bare_note) = unregularized_mode(problem);

    let mut out = vec![
        compare(
            "reduction_gbmf_to_ebmf",
            strict,
            gbmf(&same_r),
            ebmf(p, q, r, quad),
            "unit Mittag-Leffler parameters, S = R",
        ),
        compare(
            "reduction_gbmf_to_cbmf",
            bare,
            gbmf(&trivial),
            cbmf(p, q, quad),
            &format!("unit Mittag-Leffler parameters, R = S = 0{bare_note}"),
        ),
        compare(
            "reduction_gblmf_to_eblmf",
            strict,
            gblmf(&same_r),
            eblmf(&w, p, q, r, quad),
            "unit Mittag-Leffler parameters, S = R",
        ),
        compare(
            "reduction_gblmf_to_gbmf",
            strict,
            gblmf(&problem.with_weights(1.0, 1.0)),
            gbmf(problem),
            "a = b = 1",
        ),
        compare(
            "reduction_gblmf_to_ebmf",
            strict,
            gblmf(&same_r.with_weights(1.0, 1.0)),
            ebmf(p, q, r, quad),
            "a = b = 1, unit Mittag-Leffler parameters, S = R",
        ),
        compare(
            "reduction_gblmf_to_cbmf",
            bare,
            gblmf(&BetaProblem {
                weights: unit_w,
                ..trivial.clone()
            }),
            cbmf(p, q, quad),
            &format!("a = b = 1, unit Mittag-Leffler parameters, R = S = 0{bare_note}"),
        ),
    ];

    let identity = ComplexMatrix::identity(k);
    let log_mean_problem = trivial.with_pq(identity.clone(), identity.clone());
    let expected = identity.scale_real(log_mean(&w));
    out.push(match gblmf(&log_mean_problem) {
        Ok(v) => ResidualReport::strict(
            "reduction_log_mean",
            (&v.value - &expected).inf_norm(),
            REDUCTION_TOL,
            v.converged,
            format!("P = Q = I, R = S = 0, L({}, {}) = {:.12}", w.a, w.b, log_mean(&w)),
        ),
        Err(e) => ResidualReport::errored("reduction_log_mean", CheckMode::Strict, e),
    });
    Ok(out)
}
