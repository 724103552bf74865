use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matcore::{eigenvalues, is_positive_stable, ComplexMatrix};
use crate::mittag::{MLParams, MAX_PHI, MAX_PSI};
use crate::quad::QuadConfig;

/// The regularising data `(R, S, η, ξ)`.
#[derive(Debug, Clone)]
pub struct ExtensionParams {
    pub r: ComplexMatrix,
    pub s: ComplexMatrix,
    pub eta: f64,
    pub xi: f64,
}

impl ExtensionParams {
    pub fn validate(&self) -> Result<()> {
        self.r.check_same_dim(&self.s)?;
        for (name, v) in [("eta", self.eta), ("xi", self.xi)] {
            if !(v > 0.0 && v.is_finite()) {
                return Err(Error::Domain(format!("{name} must be positive, got {v}")));
            }
        }
        Ok(())
    }
}

/// The positive weights `(a, b)` of the logarithmic-mean kernel `a^{1−x} b^x`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LogMeanWeights {
    pub a: f64,
    pub b: f64,
}

impl LogMeanWeights {
    pub fn new(a: f64, b: f64) -> Result<Self> {
        let w = Self { a, b };
        w.validate()?;
        Ok(w)
    }

    pub fn unit() -> Self {
        Self { a: 1.0, b: 1.0 }
    }

    pub fn validate(&self) -> Result<()> {
        for (name, v) in [("a", self.a), ("b", self.b)] {
            if !(v > 0.0 && v.is_finite()) {
                return Err(Error::Domain(format!("{name} must be positive, got {v}")));
            }
        }
        Ok(())
    }
}

/// Every argument of the generalized beta-logarithmic matrix function.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(try_from = "ProblemJson", into = "ProblemJson")]
pub struct BetaProblem {
    pub p: ComplexMatrix,
    pub q: ComplexMatrix,
    pub ext: ExtensionParams,
    pub ml: MLParams,
    pub weights: LogMeanWeights,
    pub quad: QuadConfig,
}

/// Wire form of [`BetaProblem`].
#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ProblemJson {
    phi: f64,
    psi: f64,
    eta: f64,
    xi: f64,
    a: f64,
    b: f64,
    #[serde(rename = "P")]
    p: ComplexMatrix,
    #[serde(rename = "Q")]
    q: ComplexMatrix,
    #[serde(rename = "R")]
    r: ComplexMatrix,
    #[serde(rename = "S")]
    s: ComplexMatrix,
    #[serde(default)]
    quad: QuadConfig,
}

impl TryFrom<ProblemJson> for BetaProblem {
    type Error = Error;

    fn try_from(j: ProblemJson) -> Result<Self> {
        let problem = BetaProblem {
            p: j.p,
            q: j.q,
            ext: ExtensionParams {
                r: j.r,
                s: j.s,
                eta: j.eta,
                xi: j.xi,
            },
            ml: MLParams { phi: j.phi, psi: j.psi },
            weights: LogMeanWeights { a: j.a, b: j.b },
            quad: j.quad,
        };
        problem.validate()?;
        Ok(problem)
    }
}

impl From<BetaProblem> for ProblemJson {
    fn from(p: BetaProblem) -> Self {
        ProblemJson {
            phi: p.ml.phi,
            psi: p.ml.psi,
            eta: p.ext.eta,
            xi: p.ext.xi,
            a: p.weights.a,
            b: p.weights.b,
            p: p.p,
            q: p.q,
            r: p.ext.r,
            s: p.ext.s,
            quad: p.quad,
        }
    }
}

impl BetaProblem {
    /// Unit weights, `φ = ψ = η = ξ = 1`, zero `R` and `S`, default quadrature.
    pub fn classical(p: ComplexMatrix, q: ComplexMatrix) -> Self {
        let k = p.dim();
        Self {
            p,
            q,
            ext: ExtensionParams {
                r: ComplexMatrix::zeros(k),
                s: ComplexMatrix::zeros(k),
                eta: 1.0,
                xi: 1.0,
            },
            ml: MLParams::exponential(),
            weights: LogMeanWeights::unit(),
            quad: QuadConfig::default(),
        }
    }

    /// Parses and validates the JSON problem schema.
    pub fn from_json_str(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Input(e.to_string()))
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(self).expect("problem serialisation cannot fail")
    }

    pub fn dim(&self) -> usize {
        self.p.dim()
    }

    pub fn check_dims(&self) -> Result<()> {
        self.p.check_same_dim(&self.q)?;
        self.p.check_same_dim(&self.ext.r)?;
        self.p.check_same_dim(&self.ext.s)
    }

    pub fn validate(&self) -> Result<()> {
        self.check_dims()?;
        self.ext.validate()?;
        self.ml.validate()?;
        if self.ml.phi > MAX_PHI || self.ml.psi > MAX_PSI {
            return Err(Error::Domain(format!(
                "(phi, psi) = ({}, {}) outside the supported range (0, {MAX_PHI}] x (0, {MAX_PSI}]",
                self.ml.phi, self.ml.psi
            )));
        }
        self.weights.validate()?;
        self.quad.validate()
    }

    /// Precondition breaches that do not stop evaluation.
    pub fn warnings(&self) -> Vec<String> {
        let mut out = Vec::new();
        for (name, m) in [("P", &self.p), ("Q", &self.q)] {
            match is_positive_stable(m, 0.0) {
                Ok(true) => {}
                Ok(false) => out.push(format!("{name} is not positive stable")),
                Err(e) => out.push(format!("spectrum of {name} unavailable: {e}")),
            }
        }
        for (name, m) in [("R", &self.ext.r), ("S", &self.ext.s)] {
            if let Ok(vals) = eigenvalues(m) {
                if vals.iter().any(|l| l.re < 0.0) {
                    out.push(format!(
                        "{name} has an eigenvalue with negative real part; its factor need not decay"
                    ));
                }
            }
        }
        out
    }

    pub fn with_weights(&self, a: f64, b: f64) -> Self {
        Self {
            weights: LogMeanWeights { a, b },
            ..self.clone()
        }
    }

    pub fn with_pq(&self, p: ComplexMatrix, q: ComplexMatrix) -> Self {
        Self {
            p,
            q,
            ..self.clone()
        }
    }

    pub fn with_quad(&self, quad: QuadConfig) -> Self {
        Self { quad, ..self.clone() }
    }

    /// `(P + kI, Q + rI)`, other arguments unchanged.
    pub fn shifted(&self, k: f64, r: f64) -> Self {
        self.with_pq(self.p.shift(k), self.q.shift(r))
    }

    /// The mirrored argument set `(S, R, ξ, η; b, a; Q, P)`.
    pub fn mirrored(&self) -> Self {
        Self {
            p: self.q.clone(),
            q: self.p.clone(),
            ext: ExtensionParams {
                r: self.ext.s.clone(),
                s: self.ext.r.clone(),
                eta: self.ext.xi,
                xi: self.ext.eta,
            },
            ml: self.ml,
            weights: LogMeanWeights {
                a: self.weights.b,
                b: self.weights.a,
            },
            quad: self.quad,
        }
    }
}
