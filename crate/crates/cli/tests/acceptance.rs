//! Acceptance run: one PASS/FAIL line per criterion, non-zero exit if any fails.

#[path = "../../core/tests/common/mod.rs"]
mod common;

use std::time::{Duration, Instant};

use matbeta_cli::sweep::{run_sweep, Comparison, SweepParam, SweepSpec};
use matbeta_core::betafns::{gblmf, log_mean, reduction_check, scalar_gblf};
use matbeta_core::golden::{
    example, run_example, sweep_base, sweep_degenerate, ExampleId, ExampleOutcome, GOLDEN_TOL,
    MIRROR_AGREEMENT_TOL, MIRROR_GAP_MIN,
};
use matbeta_core::identities::{run_all, VerifyConfig};
use matbeta_core::mittag::{ml_scalar, strategy_disagreement, MLParams};
use matbeta_core::{BetaProblem, CheckMode, Complex64, ComplexMatrix, ResidualReport};

type Outcome = Result<(bool, String), String>;
type Criterion = (&'static str, fn() -> Outcome);

const ALGEBRAIC_PIN: f64 = 1e-6;
const REPRESENTATION_PIN: f64 = 1e-6;
const DERIVATIVE_PIN: f64 = 1e-4;
const ORACLE_PIN: f64 = 1e-8;
const REDUCTION_PIN: f64 = 1e-8;
const ML_ANCHOR_PIN: f64 = 1e-12;
const ML_REGION_PIN: f64 = 1e-8;
const DEGENERATE_SWEEP_PIN: f64 = 1e-8;
const SUITE_BUDGET: Duration = Duration::from_secs(600);
const EVALUATION_BUDGET: Duration = Duration::from_secs(5);

fn err(e: impl ToString) -> String {
    e.to_string()
}

fn deviations(o: &ExampleOutcome) -> String {
    o.cases
        .iter()
        .map(|c| format!("{:.1e}", c.deviation))
        .collect::<Vec<_>>()
        .join(" / ")
}

fn golden(id: ExampleId, check_time: bool) -> Outcome {
    let mut slowest = Duration::ZERO;
    if check_time {
        for case in example(id).cases {
            let start = Instant::now();
            gblmf(&case.problem).map_err(err)?;
            slowest = slowest.max(start.elapsed());
        }
    }
    let o = run_example(id).map_err(err)?;
    let cases_ok = o.cases.iter().all(|c| c.passed);
    let mut detail = format!(
        "Example {id}: deviations {} (tol {GOLDEN_TOL:.1e}), mirror gap {:.1e}",
        deviations(&o),
        o.mirror_gap
    );
    match id {
        ExampleId::E42 => detail.push_str(&format!(" (need > {MIRROR_GAP_MIN:.0e})")),
        ExampleId::E43 | ExampleId::E44 => detail.push_str(&format!(" (need <= {MIRROR_AGREEMENT_TOL:.0e})")),
        ExampleId::E41 => {}
    }
    let mut ok = cases_ok && o.relation_holds;
    if check_time {
        ok &= slowest < EVALUATION_BUDGET;
        detail.push_str(&format!(", slowest evaluation {:.3} s", slowest.as_secs_f64()));
    }
    Ok((ok, detail))
}

/// The pinned bound a strict report must meet, if any beyond its own pass flag.
fn pin(r: &ResidualReport) -> Option<f64> {
    let n = r.name.as_str();
    if n.starts_with("equal_weights") || n.starts_with("homogeneity") || n.starts_with("recurrence") || n.starts_with("finite_sum_m") {
        Some(ALGEBRAIC_PIN)
    } else if n.starts_with("integral_rep_") {
        Some(REPRESENTATION_PIN)
    } else if ["derivative_m1_n0", "derivative_m0_n1", "derivative_m1_n1"].iter().any(|d| n.starts_with(d)) {
        Some(DERIVATIVE_PIN)
    } else {
        None
    }
}

fn identity_suite() -> Outcome {
    let start = Instant::now();
    let mut problems: Vec<(String, BetaProblem)> =
        ExampleId::ALL.iter().map(|id| (format!("Example {id}"), id.problem())).collect();
    problems.extend(common::random_suite().into_iter().enumerate().map(|(i, p)| (format!("random {i}"), p)));
    let (mut strict, mut failures) = (0, Vec::new());
    for (label, problem) in &problems {
        for r in run_all(problem, &VerifyConfig::default()).map_err(err)? {
            if r.mode != CheckMode::Strict {
                continue;
            }
            strict += 1;
            let pinned = pin(&r).is_none_or(|bound| r.residual <= bound);
            if !r.passed || !pinned {
                failures.push(format!("{label}: {} residual {:.2e} ({})", r.name, r.residual, r.notes));
            }
        }
    }
    let elapsed = start.elapsed();
    let ok = failures.is_empty() && elapsed < SUITE_BUDGET;
    let mut detail = format!(
        "identity suite: {} problems, {strict} strict checks, {} failed, {:.1} s",
        problems.len(),
        failures.len(),
        elapsed.as_secs_f64()
    );
    for f in failures.iter().take(5) {
        detail.push_str(&format!("\n      {f}"));
    }
    Ok((ok, detail))
}

fn oracle_equivalence() -> Outcome {
    let mut worst: f64 = 0.0;
    let mut converged = true;
    let suite = common::scalar_suite();
    for args in &suite {
        let m = gblmf(&common::scalar_problem(args)).map_err(err)?;
        let s = scalar_gblf(args).map_err(err)?;
        converged &= m.converged;
        worst = worst.max((m.value.as_slice()[0] - s).norm());
    }
    Ok((
        converged && worst <= ORACLE_PIN,
        format!("scalar oracle: {} problems, worst difference {worst:.1e} (tol {ORACLE_PIN:.0e})", suite.len()),
    ))
}

fn reductions() -> Outcome {
    let mut problems: Vec<BetaProblem> = ExampleId::ALL.iter().map(|id| id.problem()).collect();
    problems.push(sweep_base());
    problems.extend(common::random_suite());
    let (mut worst, mut count, mut failed) = (0f64, 0, 0);
    for problem in &problems {
        for r in reduction_check(problem).map_err(err)? {
            if r.mode == CheckMode::Strict {
                count += 1;
                worst = worst.max(r.residual);
                failed += usize::from(!r.passed || r.residual > REDUCTION_PIN);
            }
        }
    }
    let k = 2;
    let id = ComplexMatrix::identity(k);
    let mut log_problem = BetaProblem::classical(id.clone(), id).with_weights(2.0, 4.0);
    log_problem.quad = log_problem.quad.tightened(100.0);
    let value = gblmf(&log_problem).map_err(err)?.value;
    let want = 2.0 / std::f64::consts::LN_2;
    let log_err = value.max_abs_diff(&ComplexMatrix::identity(k).scale_real(want));
    let closed = (log_mean(&log_problem.weights) - want).abs();
    Ok((
        failed == 0 && log_err <= REDUCTION_PIN && closed <= REDUCTION_PIN,
        format!(
            "reductions: {count} strict residuals, worst {worst:.1e}, {failed} failed; L(2, 4) = {:.9} vs 2/ln 2 (error {log_err:.1e})",
            value.as_slice()[0].re
        ),
    ))
}

fn mittag_leffler() -> Outcome {
    let anchors = [
        (1.0, 1.0, 1.0, std::f64::consts::E),
        (1.0, 2.0, -1.0, 1.0 - (-1f64).exp()),
        (2.0, 1.0, -1.0, 1f64.cos()),
    ];
    let mut anchor_err: f64 = 0.0;
    for (phi, psi, z, want) in anchors {
        let v = ml_scalar(Complex64::new(z, 0.0), &MLParams::new(phi, psi).map_err(err)?).map_err(err)?;
        anchor_err = anchor_err.max((v - want).norm());
    }
    let mut region_err: f64 = 0.0;
    for phi in [0.3, 0.5, 0.8, 1.0, 1.5, 2.0] {
        for psi in [0.5, 1.0, 2.0, 3.5] {
            let (d, _) = strategy_disagreement(&MLParams::new(phi, psi).map_err(err)?, 200).map_err(err)?;
            region_err = region_err.max(d);
        }
    }
    Ok((
        anchor_err <= ML_ANCHOR_PIN && region_err <= ML_REGION_PIN,
        format!(
            "Mittag-Leffler: anchor error {anchor_err:.1e} (tol {ML_ANCHOR_PIN:.0e}), worst region disagreement {region_err:.1e} (tol {ML_REGION_PIN:.0e})"
        ),
    ))
}

/// The fixture matrices with the scalar settings of the eight reference
/// sweeps. Where the regularisers are meant to be small, `R` and `S` are
/// scaled by 0.1.
fn reference_sweeps() -> Vec<(BetaProblem, SweepSpec)> {
    use Comparison::{GblmfVsCbmf as Cbmf, GblmfVsEblmf as Eblmf};
    use SweepParam::{Eta, Xi, A};
    // (parameter, hi, comparison, [phi, psi, eta, xi, a, b], regulariser scale)
    let configs = [
        (A, 20.0, Eblmf, [1.0, 1.0, 1.0, 1.0, 1.0, 1.0], 1.0),
        (Eta, 5.0, Eblmf, [1.0, 1.0, 1.0, 1.0, 1.0, 1.0], 1.0),
        (Xi, 5.0, Eblmf, [1.0, 1.0, 1.0, 1.0, 1.0, 1.0], 1.0),
        (Eta, 10.0, Eblmf, [1.0, 2.0, 1.0, 1.0, 0.5, 2.0], 0.1),
        (Xi, 3.0, Eblmf, [1.0, 1.0, 1.0, 1.0, 0.5, 1.0], 0.1),
        (A, 35.0, Cbmf, [1.0, 1.0, 1.0, 1.0, 1.0, 1.0], 1.0),
        (A, 20.0, Cbmf, [1.0, 1.0, 0.5, 1.0, 1.0, 1.0], 1.0),
        (Eta, 20.0, Cbmf, [1.0, 1.0, 1.0, 1.0, 1.0, 1.0], 1.0),
    ];
    configs
        .into_iter()
        .map(|(parameter, hi, comparison, [phi, psi, eta, xi, a, b], scale)| {
            let mut base = sweep_base().with_weights(a, b);
            base.ml = MLParams { phi, psi };
            base.ext.eta = eta;
            base.ext.xi = xi;
            base.ext.r = base.ext.r.scale_real(scale);
            base.ext.s = base.ext.s.scale_real(scale);
            let spec = SweepSpec {
                parameter,
                lo: 0.0,
                hi,
                points: 25,
                comparison,
            };
            (base, spec)
        })
        .collect()
}

fn sweeps() -> Outcome {
    let degenerate = SweepSpec {
        parameter: SweepParam::A,
        lo: 0.0,
        hi: 20.0,
        points: 40,
        comparison: Comparison::GblmfVsEblmf,
    };
    let out = run_sweep(&sweep_degenerate(), &degenerate).map_err(err)?;
    let worst = out
        .rows
        .iter()
        .map(|r| r.diff_inf_norm.unwrap_or(f64::NAN))
        .fold(0.0, f64::max);
    let degenerate_ok = out.all_converged() && out.rows.iter().all(|r| r.diff_inf_norm.is_some_and(|d| d <= DEGENERATE_SWEEP_PIN));

    let (mut rows, mut unconverged) = (0, 0);
    for (base, spec) in reference_sweeps() {
        let out = run_sweep(&base, &spec).map_err(err)?;
        rows += out.rows.len();
        unconverged += out
            .rows
            .iter()
            .filter(|r| !r.converged || !r.norm_gblmf.is_finite())
            .count();
    }
    Ok((
        degenerate_ok && unconverged == 0,
        format!(
            "sweeps: degenerate a-sweep worst diff {worst:.1e} over {} points (tol {DEGENERATE_SWEEP_PIN:.0e}); {rows} rows over the eight reference sweeps, {unconverged} unconverged",
            out.rows.len()
        ),
    ))
}

fn main() {
    let criteria: [Criterion; 9] = [
        ("Example 4.1 golden", || golden(ExampleId::E41, true)),
        ("Example 4.2 golden", || golden(ExampleId::E42, false)),
        ("Example 4.3 golden", || golden(ExampleId::E43, false)),
        ("Example 4.4 golden", || golden(ExampleId::E44, false)),
        ("identity suite", identity_suite),
        ("oracle equivalence", oracle_equivalence),
        ("reductions", reductions),
        ("Mittag-Leffler correctness", mittag_leffler),
        ("sweep sanity", sweeps),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let (ok, detail) = run().unwrap_or_else(|e| (false, format!("{name}: evaluation failed: {e}")));
        failed += usize::from(!ok);
        println!("criterion {} {}  {detail}", i + 1, if ok { "PASS" } else { "FAIL" });
    }
    println!("acceptance: {} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
