//! One-parameter sweeps of the generalized beta-logarithmic matrix function
//! against a classical reference, written as CSV.

use std::fmt::{self, Write as _};
use std::str::FromStr;

use matbeta_core::betafns::{cbmf, eblmf, gblmf};
use matbeta_core::{BetaProblem, Error, Result};
use rayon::prelude::*;

/// Largest number of grid points accepted.
pub const MAX_POINTS: usize = 100_000;

/// CSV header of every sweep.
pub const CSV_HEADER: &str = "param,value,norm_gblmf,norm_ref,diff_inf_norm,converged";

/// The swept parameter.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SweepParam {
    A,
    B,
    Eta,
    Xi,
    Phi,
    Psi,
    /// Multiplies `R`.
    RScale,
    /// Multiplies `S`.
    SScale,
}

impl SweepParam {
    pub const ALL: [SweepParam; 8] = [
        SweepParam::A,
        SweepParam::B,
        SweepParam::Eta,
        SweepParam::Xi,
        SweepParam::Phi,
        SweepParam::Psi,
        SweepParam::RScale,
        SweepParam::SScale,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            SweepParam::A => "a",
            SweepParam::B => "b",
            SweepParam::Eta => "eta",
            SweepParam::Xi => "xi",
            SweepParam::Phi => "phi",
            SweepParam::Psi => "psi",
            SweepParam::RScale => "r_scale",
            SweepParam::SScale => "s_scale",
        }
    }

    /// Whether the parameter must be strictly positive. The scales may be 0,
    /// which removes a regulariser.
    pub fn requires_positive(&self) -> bool {
        !matches!(self, SweepParam::RScale | SweepParam::SScale)
    }

    /// `base` with this parameter set to `value`.
    pub fn apply(&self, base: &BetaProblem, value: f64) -> BetaProblem {
        let mut p = base.clone();
        match self {
            SweepParam::A => p.weights.a = value,
            SweepParam::B => p.weights.b = value,
            SweepParam::Eta => p.ext.eta = value,
            SweepParam::Xi => p.ext.xi = value,
            SweepParam::Phi => p.ml.phi = value,
            SweepParam::Psi => p.ml.psi = value,
            SweepParam::RScale => p.ext.r = base.ext.r.scale_real(value),
            SweepParam::SScale => p.ext.s = base.ext.s.scale_real(value),
        }
        p
    }
}

impl fmt::Display for SweepParam {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for SweepParam {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|p| p.as_str() == s)
            .ok_or_else(|| Error::Input(format!("unknown sweep parameter `{s}`")))
    }
}

/// The function compared against at every grid point.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Comparison {
    /// The exponential-regulariser function with the point's `R` and weights.
    GblmfVsEblmf,
    /// The classical function, which ignores every extension.
    GblmfVsCbmf,
    None,
}

impl Comparison {
    pub const ALL: [Comparison; 3] = [Comparison::GblmfVsEblmf, Comparison::GblmfVsCbmf, Comparison::None];

    pub fn as_str(&self) -> &'static str {
        match self {
            Comparison::GblmfVsEblmf => "gblmf_vs_eblmf",
            Comparison::GblmfVsCbmf => "gblmf_vs_cbmf",
            Comparison::None => "none",
        }
    }
}

impl fmt::Display for Comparison {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Comparison {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|c| c.as_str() == s)
            .ok_or_else(|| Error::Input(format!("unknown comparison `{s}`")))
    }
}

/// A sweep of one parameter over `[lo, hi]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepSpec {
    pub parameter: SweepParam,
    pub lo: f64,
    pub hi: f64,
    pub points: usize,
    pub comparison: Comparison,
}

/// Grid values plus any adjustment made to the requested range.
#[derive(Debug, Clone, PartialEq)]
pub struct Grid {
    pub values: Vec<f64>,
    pub warning: Option<String>,
}

impl SweepSpec {
    pub fn validate(&self) -> Result<()> {
        if !(self.lo.is_finite() && self.hi.is_finite() && self.lo < self.hi) {
            return Err(Error::Input(format!(
                "sweep range needs finite lo < hi, got [{}, {}]",
                self.lo, self.hi
            )));
        }
        if !(2..=MAX_POINTS).contains(&self.points) {
            return Err(Error::Input(format!(
                "points must lie in [2, {MAX_POINTS}], got {}",
                self.points
            )));
        }
        if self.parameter.requires_positive() && self.lo < 0.0 {
            return Err(Error::Input(format!(
                "{} must be positive, but the range starts at {}",
                self.parameter, self.lo
            )));
        }
        Ok(())
    }

    /// `points` equally spaced values from `lo` to `hi`. A positive-only
    /// parameter with `lo = 0` gets the grid open at 0: it starts one step
    /// above `lo` and still ends at `hi`.
    pub fn grid(&self) -> Result<Grid> {
        self.validate()?;
        let n = self.points;
        let span = self.hi - self.lo;
        if self.parameter.requires_positive() && self.lo == 0.0 {
            let step = span / n as f64;
            return Ok(Grid {
                values: (1..=n).map(|i| self.lo + step * i as f64).collect(),
                warning: Some(format!(
                    "{} must be positive; the grid starts at lo + step = {step} instead of 0",
                    self.parameter
                )),
            });
        }
        let step = span / (n - 1) as f64;
        let mut values: Vec<f64> = (0..n).map(|i| self.lo + step * i as f64).collect();
        values[n - 1] = self.hi;
        Ok(Grid { values, warning: None })
    }
}

/// One evaluated grid point. Norms are infinity norms; a point that failed
/// to evaluate carries NaN values and `converged = false`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepRow {
    pub value: f64,
    pub norm_gblmf: f64,
    pub norm_ref: Option<f64>,
    pub diff_inf_norm: Option<f64>,
    pub converged: bool,
}

/// The rows of a sweep, in grid order.
#[derive(Debug, Clone)]
pub struct SweepOutput {
    pub spec: SweepSpec,
    pub rows: Vec<SweepRow>,
    pub warnings: Vec<String>,
}

impl SweepOutput {
    pub fn all_converged(&self) -> bool {
        self.rows.iter().all(|r| r.converged)
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::with_capacity(64 * (self.rows.len() + 1));
        out.push_str(CSV_HEADER);
        out.push('\n');
        let opt = |v: Option<f64>| v.map_or(String::new(), |x| format!("{x:.15e}"));
        for r in &self.rows {
            let _ = writeln!(
                out,
                "{},{:.15e},{:.15e},{},{},{}",
                self.spec.parameter,
                r.value,
                r.norm_gblmf,
                opt(r.norm_ref),
                opt(r.diff_inf_norm),
                r.converged
            );
        }
        out
    }
}

fn evaluate(problem: &BetaProblem, value: f64, comparison: Comparison) -> SweepRow {
    let failed = SweepRow {
        value,
        norm_gblmf: f64::NAN,
        norm_ref: (comparison != Comparison::None).then_some(f64::NAN),
        diff_inf_norm: (comparison != Comparison::None).then_some(f64::NAN),
        converged: false,
    };
    let Ok(main) = gblmf(problem) else {
        return failed;
    };
    let reference = match comparison {
        Comparison::GblmfVsEblmf => Some(eblmf(
            &problem.weights,
            &problem.p,
            &problem.q,
            &problem.ext.r,
            &problem.quad,
        )),
        Comparison::GblmfVsCbmf => Some(cbmf(&problem.p, &problem.q, &problem.quad)),
        Comparison::None => None,
    };
    match reference {
        None => SweepRow {
            value,
            norm_gblmf: main.value.inf_norm(),
            norm_ref: None,
            diff_inf_norm: None,
            converged: main.converged,
        },
        Some(Ok(r)) => SweepRow {
            value,
            norm_gblmf: main.value.inf_norm(),
            norm_ref: Some(r.value.inf_norm()),
            diff_inf_norm: Some((&main.value - &r.value).inf_norm()),
            converged: main.converged && r.converged,
        },
        Some(Err(_)) => failed,
    }
}

/// Evaluates every grid point concurrently. Every point's problem is
/// validated before any evaluation starts, so an out-of-domain grid is an
/// input error rather than a column of failed rows.
pub fn run_sweep(base: &BetaProblem, spec: &SweepSpec) -> Result<SweepOutput> {
    base.validate()?;
    let grid = spec.grid()?;
    let problems = grid
        .values
        .iter()
        .map(|&v| {
            let p = spec.parameter.apply(base, v);
            p.validate()
                .map(|()| p)
                .map_err(|e| Error::Input(format!("{} = {v}: {e}", spec.parameter)))
        })
        .collect::<Result<Vec<_>>>()?;
    let rows = problems
        .par_iter()
        .zip(grid.values.par_iter())
        .map(|(p, &v)| evaluate(p, v, spec.comparison))
        .collect();
    Ok(SweepOutput {
        spec: *spec,
        rows,
        warnings: grid.warning.into_iter().collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(parameter: SweepParam, lo: f64, hi: f64, points: usize) -> SweepSpec {
        SweepSpec {
            parameter,
            lo,
            hi,
            points,
            comparison: Comparison::None,
        }
    }

    #[test]
    fn closed_grid_hits_both_ends() {
        let g = spec(SweepParam::Eta, 0.1, 5.0, 50).grid().unwrap();
        assert_eq!(g.values.len(), 50);
        assert_eq!(g.values[0], 0.1);
        assert_eq!(g.values[49], 5.0);
        assert!(g.warning.is_none());
    }

    #[test]
    fn zero_start_is_opened_for_positive_parameters() {
        let g = spec(SweepParam::A, 0.0, 20.0, 4).grid().unwrap();
        assert_eq!(g.values, vec![5.0, 10.0, 15.0, 20.0]);
        assert!(g.warning.is_some());
        let g = spec(SweepParam::RScale, 0.0, 1.0, 3).grid().unwrap();
        assert_eq!(g.values, vec![0.0, 0.5, 1.0]);
    }

    #[test]
    fn invalid_specs_are_rejected() {
        assert!(spec(SweepParam::A, 1.0, 1.0, 5).validate().is_err());
        assert!(spec(SweepParam::A, 1.0, 2.0, 1).validate().is_err());
        assert!(spec(SweepParam::A, 1.0, 2.0, MAX_POINTS + 1).validate().is_err());
        assert!(spec(SweepParam::Xi, -1.0, 2.0, 5).validate().is_err());
        assert!(spec(SweepParam::SScale, -1.0, 2.0, 5).validate().is_ok());
    }

    #[test]
    fn names_round_trip() {
        for p in SweepParam::ALL {
            assert_eq!(p.as_str().parse::<SweepParam>().unwrap(), p);
        }
        for c in Comparison::ALL {
            assert_eq!(c.as_str().parse::<Comparison>().unwrap(), c);
        }
        assert!("gamma".parse::<SweepParam>().is_err());
    }
}
