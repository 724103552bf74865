use serde::{Deserialize, Serialize};

/// Whether a failed check counts as a failure.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CheckMode {
    Strict,
    ReportOnly,
}

/// Outcome of one identity check.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResidualReport {
    pub name: String,
    /// `‖lhs − rhs‖∞` (or the check's own residual measure).
    pub residual: f64,
    pub tolerance: f64,
    /// `residual ≤ tolerance` and every quadrature converged.
    pub passed: bool,
    pub mode: CheckMode,
    pub converged: bool,
    pub notes: String,
}

impl ResidualReport {
    pub fn new(
        name: impl Into<String>,
        mode: CheckMode,
        residual: f64,
        tolerance: f64,
        converged: bool,
        notes: impl Into<String>,
    ) -> Self {
        Self {
            name: name.into(),
            residual,
            tolerance,
            passed: converged && residual <= tolerance,
            mode,
            converged,
            notes: notes.into(),
        }
    }

    pub fn strict(
        name: impl Into<String>,
        residual: f64,
        tolerance: f64,
        converged: bool,
        notes: impl Into<String>,
    ) -> Self {
        Self::new(name, CheckMode::Strict, residual, tolerance, converged, notes)
    }

    pub fn report_only(
        name: impl Into<String>,
        residual: f64,
        tolerance: f64,
        converged: bool,
        notes: impl Into<String>,
    ) -> Self {
        Self::new(name, CheckMode::ReportOnly, residual, tolerance, converged, notes)
    }

    /// A check that could not be evaluated at all.
    pub fn errored(name: impl Into<String>, mode: CheckMode, message: impl std::fmt::Display) -> Self {
        Self {
            name: name.into(),
            residual: f64::NAN,
            tolerance: 0.0,
            passed: false,
            mode,
            converged: false,
            notes: format!("evaluation failed: {message}"),
        }
    }

    /// A strict check that did not pass.
    pub fn is_failure(&self) -> bool {
        self.mode == CheckMode::Strict && !self.passed
    }

    /// One JSON object on one line.
    pub fn to_json_line(&self) -> String {
        serde_json::to_string(self).expect("report serialisation cannot fail")
    }
}

/// Pass and failure counts over a report sequence.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub strict_passed: usize,
    pub strict_failed: usize,
    pub report_only: usize,
    pub unconverged: usize,
}

impl Summary {
    pub fn of(reports: &[ResidualReport]) -> Self {
        let mut s = Self::default();
        for r in reports {
            match (r.mode, r.passed) {
                (CheckMode::Strict, true) => s.strict_passed += 1,
                (CheckMode::Strict, false) => s.strict_failed += 1,
                (CheckMode::ReportOnly, _) => s.report_only += 1,
            }
            if !r.converged {
                s.unconverged += 1;
            }
        }
        s
    }

    pub fn all_strict_passed(&self) -> bool {
        self.strict_failed == 0
    }
}
