//! The four built-in 2×2 worked examples with their published values, and
//! the parameter-sweep base problems.
//!
//! Each example evaluates a problem and its mirrored argument set
//! `(S, R, ξ, η; b, a; Q, P)`. For the non-commuting inputs of 4.1 and 4.2 the
//! two values differ; for the commuting family of 4.3 and 4.4 they agree.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::betafns::{gblmf, gbmf, BetaProblem};
use crate::error::{Error, Result};
use crate::matcore::ComplexMatrix;

/// Largest allowed per-entry deviation from a published value (given to 4 decimals).
pub const GOLDEN_TOL: f64 = 1.5e-3;
/// Agreement required between an example and its mirror for commuting inputs.
pub const MIRROR_AGREEMENT_TOL: f64 = 1e-6;
/// Smallest entrywise gap that exhibits a broken symmetry.
pub const MIRROR_GAP_MIN: f64 = 5e-3;

pub const EXAMPLE_4_1_JSON: &str = include_str!("../fixtures/example_4_1.json");
pub const EXAMPLE_4_2_JSON: &str = include_str!("../fixtures/example_4_2.json");
pub const EXAMPLE_4_3_JSON: &str = include_str!("../fixtures/example_4_3.json");
pub const EXAMPLE_4_4_JSON: &str = include_str!("../fixtures/example_4_4.json");
/// Sweep base: the 2×2 pair `P = [[1,0],[1,2]]`, `Q = [[1,1],[0,2]]` with
/// small regularisers `R = 0.3·I`, `‖S‖∞ = 0.4`. The regulariser values are
/// a chosen default, not published data.
pub const SWEEP_BASE_JSON: &str = include_str!("../fixtures/sweep_base.json");
/// Sweep base with `R = S` and unit parameters, where the generalized and
/// extended functions coincide.
pub const SWEEP_DEGENERATE_JSON: &str = include_str!("../fixtures/sweep_degenerate.json");

/// Identifier of a worked example.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum ExampleId {
    #[serde(rename = "4.1")]
    E41,
    #[serde(rename = "4.2")]
    E42,
    #[serde(rename = "4.3")]
    E43,
    #[serde(rename = "4.4")]
    E44,
}

impl ExampleId {
    pub const ALL: [ExampleId; 4] = [ExampleId::E41, ExampleId::E42, ExampleId::E43, ExampleId::E44];

    pub fn as_str(&self) -> &'static str {
        match self {
            ExampleId::E41 => "4.1",
            ExampleId::E42 => "4.2",
            ExampleId::E43 => "4.3",
            ExampleId::E44 => "4.4",
        }
    }

    /// The problem file of the example.
    pub fn fixture_json(&self) -> &'static str {
        match self {
            ExampleId::E41 => EXAMPLE_4_1_JSON,
            ExampleId::E42 => EXAMPLE_4_2_JSON,
            ExampleId::E43 => EXAMPLE_4_3_JSON,
            ExampleId::E44 => EXAMPLE_4_4_JSON,
        }
    }

    pub fn problem(&self) -> BetaProblem {
        BetaProblem::from_json_str(self.fixture_json()).expect("built-in fixture is valid")
    }
}

impl fmt::Display for ExampleId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for ExampleId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        ExampleId::ALL
            .into_iter()
            .find(|id| id.as_str() == s)
            .ok_or_else(|| Error::Input(format!("unknown example '{s}', expected one of 4.1, 4.2, 4.3, 4.4")))
    }
}

/// Which function an example evaluates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum GoldenFunction {
    Gblmf,
    Gbmf,
}

/// What an example asserts about its two values.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum MirrorRelation {
    /// Entrywise gap above [`MIRROR_GAP_MIN`].
    Differ,
    /// Infinity-norm gap below [`MIRROR_AGREEMENT_TOL`].
    Agree,
}

/// One published value and the problem it belongs to.
#[derive(Debug, Clone)]
pub struct GoldenCase {
    pub label: String,
    pub problem: BetaProblem,
    pub published: [[f64; 2]; 2],
}

/// A worked example.
#[derive(Debug, Clone)]
pub struct Example {
    pub id: ExampleId,
    pub function: GoldenFunction,
    pub cases: [GoldenCase; 2],
    pub relation: MirrorRelation,
}

/// The definition of example `id`.
pub fn example(id: ExampleId) -> Example {
    let problem = id.problem();
    let mirrored = problem.mirrored();
    let (function, relation, published) = match id {
        ExampleId::E41 => (
            GoldenFunction::Gblmf,
            MirrorRelation::Differ,
            [
                [[0.0223, -0.0369], [-0.0252, 0.0423]],
                [[0.0334, -0.0536], [-0.0192, 0.0312]],
            ],
        ),
        ExampleId::E42 => (
            GoldenFunction::Gblmf,
            MirrorRelation::Differ,
            [
                [[0.0154, -0.0257], [-0.0182, 0.0307]],
                [[0.0234, -0.0378], [-0.0139, 0.0227]],
            ],
        ),
        ExampleId::E43 => {
            let v = [[-0.2505, 0.1049], [-0.1049, -0.2505]];
            (GoldenFunction::Gblmf, MirrorRelation::Agree, [v, v])
        }
        ExampleId::E44 => {
            let v = [[-0.1015, 0.0480], [-0.0480, -0.1015]];
            (GoldenFunction::Gbmf, MirrorRelation::Agree, [v, v])
        }
    };
    let name = match function {
        GoldenFunction::Gblmf => "gblmf",
        GoldenFunction::Gbmf => "gbmf",
    };
    Example {
        id,
        function,
        cases: [
            GoldenCase {
                label: format!("{name}(R, S, eta, xi; a, b; P, Q)"),
                problem,
                published: published[0],
            },
            GoldenCase {
                label: format!("{name}(S, R, xi, eta; b, a; Q, P)"),
                problem: mirrored,
                published: published[1],
            },
        ],
        relation,
    }
}

/// A computed value next to its published counterpart.
#[derive(Debug, Clone, Serialize)]
pub struct CaseOutcome {
    pub label: String,
    pub computed: ComplexMatrix,
    pub published: [[f64; 2]; 2],
    /// Largest entrywise `|computed − published|`.
    pub deviation: f64,
    pub converged: bool,
    pub passed: bool,
}

/// The outcome of an example.
#[derive(Debug, Clone, Serialize)]
pub struct ExampleOutcome {
    pub id: ExampleId,
    pub function: GoldenFunction,
    pub cases: Vec<CaseOutcome>,
    pub relation: MirrorRelation,
    /// Entrywise max `|first − second|` of the two computed values.
    pub mirror_gap: f64,
    pub relation_holds: bool,
    pub passed: bool,
}

fn published_matrix(v: &[[f64; 2]; 2]) -> ComplexMatrix {
    ComplexMatrix::from_real(*v)
}

/// Evaluates example `id` and compares against the published values.
pub fn run_example(id: ExampleId) -> Result<ExampleOutcome> {
    let ex = example(id);
    let mut cases = Vec::with_capacity(2);
    for case in &ex.cases {
        let result = match ex.function {
            GoldenFunction::Gblmf => gblmf(&case.problem)?,
            GoldenFunction::Gbmf => gbmf(&case.problem)?,
        };
        let deviation = result.value.max_abs_diff(&published_matrix(&case.published));
        cases.push(CaseOutcome {
            label: case.label.clone(),
            passed: result.converged && deviation <= GOLDEN_TOL,
            computed: result.value,
            published: case.published,
            deviation,
            converged: result.converged,
        });
    }
    let mirror_gap = cases[0].computed.max_abs_diff(&cases[1].computed);
    let relation_holds = match ex.relation {
        MirrorRelation::Differ => mirror_gap > MIRROR_GAP_MIN,
        MirrorRelation::Agree => (&cases[0].computed - &cases[1].computed).inf_norm() <= MIRROR_AGREEMENT_TOL,
    };
    let passed = relation_holds && cases.iter().all(|c| c.passed);
    Ok(ExampleOutcome {
        id,
        function: ex.function,
        cases,
        relation: ex.relation,
        mirror_gap,
        relation_holds,
        passed,
    })
}

/// The sweep base problem.
pub fn sweep_base() -> BetaProblem {
    BetaProblem::from_json_str(SWEEP_BASE_JSON).expect("built-in fixture is valid")
}

/// The sweep base with `R = S` and unit parameters.
pub fn sweep_degenerate() -> BetaProblem {
    BetaProblem::from_json_str(SWEEP_DEGENERATE_JSON).expect("built-in fixture is valid")
}
