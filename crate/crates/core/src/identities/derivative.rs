use crate::betafns::{gblmf, gblmf_log_moment, BetaProblem};
use crate::error::Error;
use crate::matcore::ComplexMatrix;

use super::{guard, scaled_tol, CheckMode, ResidualReport};

const DERIVATIVE_TOL: f64 = 1e-4;
const MOMENT_TOL: f64 = 1e-10;

/// Step of the central difference for a derivative of total order `order`:
/// `max(1e−4, ε^{1/(order+2)})`, so rounding never dominates the `O(h²)`
/// truncation error.
pub fn finite_difference_step(order: u32) -> f64 {
    1e-4f64.max(f64::EPSILON.powf(1.0 / (order as f64 + 2.0)))
}

/// Central stencil `(offset, weight)` of the `order`-th derivative, `order ≤ 2`.
fn stencil(order: u32, h: f64) -> Vec<(f64, f64)> {
    match order {
        0 => vec![(0.0, 1.0)],
        1 => vec![(-h, -0.5 / h), (h, 0.5 / h)],
        _ => vec![(-h, 1.0 / (h * h)), (0.0, -2.0 / (h * h)), (h, 1.0 / (h * h))],
    }
}

/// `∂^{m+n}/∂s^m ∂t^n BL(P+sI, Q+tI)` at `s = t = 0` as the log-moment
/// integral `∫ ln^m(x) ln^n(1−x) (…) dx`, checked against central
/// differences. All stencil points share one fixed quadrature level so the
/// differences see the same discretisation.
pub fn check_derivative(problem: &BetaProblem, m: u32, n: u32) -> ResidualReport {
    let name = format!("derivative_m{m}_n{n}");
    guard(&name, CheckMode::Strict, || {
        if m > 2 || n > 2 {
            return Err(Error::Domain(format!("derivative orders must be at most 2, got ({m}, {n})")));
        }
        let moment = gblmf_log_moment(problem, m, n)?;
        if m + n == 0 {
            let base = gblmf(problem)?;
            return Ok(ResidualReport::strict(
                name.as_str(),
                (&moment.value - &base.value).inf_norm(),
                scaled_tol(MOMENT_TOL, &base.value),
                moment.converged && base.converged,
                "zeroth moment against the function itself",
            ));
        }
        let level = (moment.level + 1).min(20);
        let fixed = problem.with_quad(problem.quad.fixed_level(level));
        let h = finite_difference_step(m + n);
        let mut fd = ComplexMatrix::zeros(problem.dim());
        for &(ds, ws) in &stencil(m, h) {
            for &(dt, wt) in &stencil(n, h) {
                let v = gblmf(&fixed.shifted(ds, dt))?;
                fd += &v.value.scale_real(ws * wt);
            }
        }
        Ok(ResidualReport::strict(
            name.as_str(),
            (&moment.value - &fd).inf_norm(),
            scaled_tol(DERIVATIVE_TOL, &moment.value),
            moment.converged,
            format!("central differences, h = {h:.2e}, quadrature level {level}"),
        ))
    })
}
