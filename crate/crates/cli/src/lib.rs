//! Command-line front end: evaluate functions from JSON problem files, run
//! the identity audit, reproduce the worked examples and write parameter
//! sweeps as CSV.

pub mod sweep;

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use matbeta_core::betafns::{cbmf, ebmf, eblmf, gblmf, gbmf, log_mean};
use matbeta_core::golden::{run_example, ExampleId, ExampleOutcome, MirrorRelation, GOLDEN_TOL, MIRROR_AGREEMENT_TOL, MIRROR_GAP_MIN};
use matbeta_core::identities::{run_all, Summary, VerifyConfig};
use matbeta_core::{BetaProblem, ComplexMatrix, QuadResult};
use serde::Serialize;

use sweep::{run_sweep, Comparison, SweepParam, SweepSpec};

/// Process exit status. No other value is ever returned.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Exit {
    Success = 0,
    /// Unreadable, malformed or out-of-domain input.
    Input = 1,
    /// An evaluation failed, did not converge, or a strict check failed.
    Numerical = 2,
}

impl Exit {
    pub fn code(self) -> i32 {
        self as i32
    }
}

/// A command that stopped early, with the status to exit with.
#[derive(Debug)]
pub struct Failure {
    pub exit: Exit,
    pub message: String,
}

impl Failure {
    fn input(message: impl ToString) -> Self {
        Self {
            exit: Exit::Input,
            message: message.to_string(),
        }
    }

    fn numerical(message: impl ToString) -> Self {
        Self {
            exit: Exit::Numerical,
            message: message.to_string(),
        }
    }
}

type CmdResult = Result<Exit, Failure>;

#[derive(Debug, Parser)]
#[command(name = "matbeta", version, about = "Generalized beta-logarithmic matrix functions")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate one function on a problem file and write the result as JSON.
    Eval(EvalArgs),
    /// Run every identity check on a problem file, one JSON report per line.
    Verify(VerifyArgs),
    /// Recompute the worked examples and compare with the published values.
    Examples(ExamplesArgs),
    /// Sweep one parameter and write the norms as CSV.
    Sweep(SweepArgs),
}

/// Overrides of the quadrature settings in the problem file.
#[derive(Debug, Clone, Args)]
pub struct QuadArgs {
    #[arg(long)]
    pub abs_tol: Option<f64>,
    #[arg(long)]
    pub rel_tol: Option<f64>,
    #[arg(long)]
    pub max_level: Option<u32>,
}

#[derive(Debug, Args)]
pub struct EvalArgs {
    #[arg(long)]
    pub problem: PathBuf,
    /// One of gblmf, gbmf, eblmf, ebmf, cbmf, logmean.
    #[arg(long, default_value = "gblmf")]
    pub function: String,
    /// Output file; standard output when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[command(flatten)]
    pub quad: QuadArgs,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long)]
    pub problem: PathBuf,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[command(flatten)]
    pub quad: QuadArgs,
}

#[derive(Debug, Args)]
pub struct ExamplesArgs {
    /// 4.1, 4.2, 4.3 or 4.4; every example when absent.
    pub id: Option<ExampleId>,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    #[arg(long)]
    pub problem: PathBuf,
    /// One of a, b, eta, xi, phi, psi, r_scale, s_scale.
    #[arg(long)]
    pub param: SweepParam,
    #[arg(long, allow_negative_numbers = true)]
    pub lo: f64,
    #[arg(long, allow_negative_numbers = true)]
    pub hi: f64,
    #[arg(long)]
    pub points: usize,
    /// One of gblmf_vs_eblmf, gblmf_vs_cbmf, none.
    #[arg(long, default_value = "gblmf_vs_eblmf")]
    pub compare: Comparison,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[command(flatten)]
    pub quad: QuadArgs,
}

/// Parses `args` (program name first) and runs the command. Returns the
/// process exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = write!(stderr, "{}", e.render());
            return if e.use_stderr() { Exit::Input.code() } else { Exit::Success.code() };
        }
    };
    let outcome = match &cli.command {
        Command::Eval(a) => cmd_eval(a, stdout, stderr),
        Command::Verify(a) => cmd_verify(a, stdout, stderr),
        Command::Examples(a) => cmd_examples(a.id, stdout),
        Command::Sweep(a) => cmd_sweep(a, stdout, stderr),
    };
    match outcome {
        Ok(exit) => exit.code(),
        Err(f) => {
            let _ = writeln!(stderr, "error: {}", f.message);
            f.exit.code()
        }
    }
}

/// Reads a problem file and applies the quadrature overrides.
pub fn load_problem(path: &Path, quad: &QuadArgs) -> Result<BetaProblem, Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure::input(format!("{}: {e}", path.display())))?;
    let mut problem =
        BetaProblem::from_json_str(&text).map_err(|e| Failure::input(format!("{}: {e}", path.display())))?;
    if let Some(v) = quad.abs_tol {
        problem.quad.abs_tol = v;
    }
    if let Some(v) = quad.rel_tol {
        problem.quad.rel_tol = v;
    }
    if let Some(v) = quad.max_level {
        problem.quad.max_level = v;
    }
    problem.validate().map_err(Failure::input)?;
    Ok(problem)
}

fn emit(out: Option<&Path>, stdout: &mut dyn Write, text: &str) -> Result<(), Failure> {
    match out {
        Some(path) => fs::write(path, text).map_err(|e| Failure::input(format!("{}: {e}", path.display()))),
        None => stdout
            .write_all(text.as_bytes())
            .map_err(|e| Failure::input(format!("standard output: {e}"))),
    }
}

/// Value written by `eval`: a matrix, or a number for the logarithmic mean.
#[derive(Debug, Serialize)]
#[serde(untagged)]
enum EvalValue {
    Matrix(ComplexMatrix),
    Scalar(f64),
}

#[derive(Debug, Serialize)]
struct EvalOutput {
    function: String,
    value: EvalValue,
    err_estimate: f64,
    converged: bool,
    n_evals: usize,
    warnings: Vec<String>,
}

/// Names accepted by `eval --function`.
pub const FUNCTIONS: [&str; 6] = ["gblmf", "gbmf", "eblmf", "ebmf", "cbmf", "logmean"];

pub fn cmd_eval(args: &EvalArgs, stdout: &mut dyn Write, stderr: &mut dyn Write) -> CmdResult {
    if !FUNCTIONS.contains(&args.function.as_str()) {
        return Err(Failure::input(format!(
            "unknown function `{}`, expected one of {}",
            args.function,
            FUNCTIONS.join(", ")
        )));
    }
    let problem = load_problem(&args.problem, &args.quad)?;
    let warnings = problem.warnings();
    for w in &warnings {
        let _ = writeln!(stderr, "warning: {w}");
    }
    let (p, q, r, quad) = (&problem.p, &problem.q, &problem.ext.r, &problem.quad);
    let result: matbeta_core::Result<QuadResult> = match args.function.as_str() {
        "gblmf" => gblmf(&problem),
        "gbmf" => gbmf(&problem),
        "eblmf" => eblmf(&problem.weights, p, q, r, quad),
        "ebmf" => ebmf(p, q, r, quad),
        "cbmf" => cbmf(p, q, quad),
        _ => Ok(QuadResult {
            value: ComplexMatrix::scalar(1, log_mean(&problem.weights).into()),
            err_estimate: 0.0,
            n_evals: 0,
            converged: true,
            level: 0,
        }),
    };
    let result = result.map_err(Failure::numerical)?;
    let value = if args.function == "logmean" {
        EvalValue::Scalar(result.value.as_slice()[0].re)
    } else {
        EvalValue::Matrix(result.value)
    };
    let output = EvalOutput {
        function: args.function.clone(),
        value,
        err_estimate: result.err_estimate,
        converged: result.converged,
        n_evals: result.n_evals,
        warnings,
    };
    let text = serde_json::to_string_pretty(&output).expect("result serialisation cannot fail") + "\n";
    emit(args.out.as_deref(), stdout, &text)?;
    Ok(if output.converged { Exit::Success } else { Exit::Numerical })
}

pub fn cmd_verify(args: &VerifyArgs, stdout: &mut dyn Write, stderr: &mut dyn Write) -> CmdResult {
    let problem = load_problem(&args.problem, &args.quad)?;
    let reports = run_all(&problem, &VerifyConfig::default()).map_err(Failure::input)?;
    let text: String = reports.iter().map(|r| r.to_json_line() + "\n").collect();
    emit(args.out.as_deref(), stdout, &text)?;
    let summary = Summary::of(&reports);
    let _ = writeln!(
        stderr,
        "strict checks: {} passed, {} failed; report-only: {}; unconverged: {}",
        summary.strict_passed, summary.strict_failed, summary.report_only, summary.unconverged
    );
    for r in reports.iter().filter(|r| r.is_failure()) {
        let _ = writeln!(stderr, "failed: {} residual {:.3e} > {:.3e} ({})", r.name, r.residual, r.tolerance, r.notes);
    }
    Ok(if summary.all_strict_passed() { Exit::Success } else { Exit::Numerical })
}

fn format_row(values: impl Iterator<Item = f64>) -> String {
    let cells: Vec<String> = values.map(|v| format!("{v:>10.6}")).collect();
    format!("[{}]", cells.join(", "))
}

fn write_example(o: &ExampleOutcome, out: &mut dyn Write) -> std::io::Result<()> {
    let function = serde_json::to_value(o.function).expect("plain enum");
    writeln!(out, "Example {} ({})", o.id, function.as_str().unwrap_or_default())?;
    for case in &o.cases {
        writeln!(out, "  {}", case.label)?;
        let k = case.computed.dim();
        let entries = case.computed.as_slice();
        for i in 0..k {
            let computed = format_row(entries[i * k..(i + 1) * k].iter().map(|z| z.re));
            let published = format_row(case.published[i].iter().copied());
            let tag = if i == 0 { ("computed ", "published") } else { ("         ", "         ") };
            writeln!(out, "    {} {computed}   {} {published}", tag.0, tag.1)?;
        }
        let imag = entries.iter().map(|z| z.im.abs()).fold(0.0, f64::max);
        if imag > 1e-12 {
            writeln!(out, "    largest imaginary part {imag:.3e}")?;
        }
        writeln!(
            out,
            "    max deviation {:.3e} (tolerance {GOLDEN_TOL:.1e}){}: {}",
            case.deviation,
            if case.converged { "" } else { ", unconverged" },
            if case.passed { "ok" } else { "FAIL" }
        )?;
    }
    let relation = match o.relation {
        MirrorRelation::Differ => format!("values differ: max entry gap {:.3e} (required > {MIRROR_GAP_MIN:.1e})", o.mirror_gap),
        MirrorRelation::Agree => format!(
            "values agree: max entry gap {:.3e} (required <= {MIRROR_AGREEMENT_TOL:.1e})",
            o.mirror_gap
        ),
    };
    writeln!(out, "  {relation}: {}", if o.relation_holds { "ok" } else { "FAIL" })
}

pub fn cmd_examples(id: Option<ExampleId>, stdout: &mut dyn Write) -> CmdResult {
    let ids = id.map_or(ExampleId::ALL.to_vec(), |id| vec![id]);
    let mut all_passed = true;
    for id in ids {
        let outcome = run_example(id).map_err(Failure::numerical)?;
        all_passed &= outcome.passed;
        write_example(&outcome, stdout).map_err(|e| Failure::input(format!("standard output: {e}")))?;
    }
    Ok(if all_passed { Exit::Success } else { Exit::Numerical })
}

pub fn cmd_sweep(args: &SweepArgs, stdout: &mut dyn Write, stderr: &mut dyn Write) -> CmdResult {
    let base = load_problem(&args.problem, &args.quad)?;
    let spec = SweepSpec {
        parameter: args.param,
        lo: args.lo,
        hi: args.hi,
        points: args.points,
        comparison: args.compare,
    };
    let output = run_sweep(&base, &spec).map_err(Failure::input)?;
    for w in &output.warnings {
        let _ = writeln!(stderr, "warning: {w}");
    }
    emit(args.out.as_deref(), stdout, &output.to_csv())?;
    let unconverged = output.rows.iter().filter(|r| !r.converged).count();
    if unconverged > 0 {
        let _ = writeln!(stderr, "{unconverged} of {} rows did not converge", output.rows.len());
        return Ok(Exit::Numerical);
    }
    Ok(Exit::Success)
}
