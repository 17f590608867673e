//! JSON problem files.
//!
//! ```json
//! {
//!   "kind": "type2", "n": 3, "m": 1, "r": 2, "s": 3,
//!   "A": [[[0.667, 0], ...], ...],
//!   "F": {"kind": "power", "exponent": 0.5},
//!   "G": {"kind": "power", "exponent": 0.25},
//!   "a": 2, "l": 0.25,
//!   "x0": "identity",
//!   "options": {"seed": 7, "samples": 200}
//! }
//! ```

use std::fmt;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::hpd::{CMatrix, Hermitian, PdMatrix};
use crate::solver::{MatrixFunction, ProblemKind, ProblemSpec, SolveOptions};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum FunctionRepr {
    Power { exponent: f64 },
    Constant { value: CMatrix },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum StartRepr {
    Named(String),
    Matrix(CMatrix),
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileOptions {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gap_tol: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub residual_tol: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_iter: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub samples: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub force: Option<bool>,
}

/// Raw problem document, before semantic validation.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemFile {
    pub kind: String,
    pub n: usize,
    pub m: usize,
    pub s: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub r: Option<f64>,
    #[serde(rename = "A")]
    pub coefficients: Vec<CMatrix>,
    #[serde(rename = "Q1", default, skip_serializing_if = "Option::is_none")]
    pub q1: Option<CMatrix>,
    #[serde(rename = "Q2", default, skip_serializing_if = "Option::is_none")]
    pub q2: Option<CMatrix>,
    #[serde(rename = "F")]
    pub f: FunctionRepr,
    #[serde(rename = "G")]
    pub g: FunctionRepr,
    pub a: f64,
    pub l: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub x0: Option<StartRepr>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub options: Option<FileOptions>,
}

/// A parse or schema failure, naming the offending location.
#[derive(Debug, Clone, PartialEq)]
pub enum LoadError {
    Io {
        path: String,
        message: String,
    },
    /// JSON syntax or shape error; carries the line and column.
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    /// Well-formed JSON with an invalid value under `key`.
    Schema {
        key: String,
        message: String,
    },
}

impl fmt::Display for LoadError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Io { path, message } => write!(f, "cannot read {path}: {message}"),
            Self::Parse {
                line,
                column,
                message,
            } => {
                write!(f, "parse error at line {line}, column {column}: {message}")
            }
            Self::Schema { key, message } => write!(f, "invalid value for key '{key}': {message}"),
        }
    }
}

impl std::error::Error for LoadError {}

impl From<serde_json::Error> for LoadError {
    fn from(e: serde_json::Error) -> Self {
        Self::Parse {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        }
    }
}

fn schema(key: impl Into<String>, message: impl fmt::Display) -> LoadError {
    LoadError::Schema {
        key: key.into(),
        message: message.to_string(),
    }
}

/// Everything a problem file describes.
#[derive(Debug, Clone, PartialEq)]
pub struct LoadedProblem {
    pub problem: ProblemSpec,
    pub x0: PdMatrix,
    pub options: SolveOptions,
}

pub fn parse_start(repr: &StartRepr, n: usize) -> Result<PdMatrix, LoadError> {
    match repr {
        StartRepr::Named(name) if name == "identity" => Ok(PdMatrix::identity(n)),
        StartRepr::Named(other) => Err(schema(
            "x0",
            format!("expected \"identity\" or a matrix, got {other:?}"),
        )),
        StartRepr::Matrix(m) => {
            if m.dim() != n {
                return Err(schema(
                    "x0",
                    format!("is {0}x{0}, expected {n}x{n}", m.dim()),
                ));
            }
            PdMatrix::from_matrix(m.clone()).map_err(|e| schema("x0", e))
        }
    }
}

fn pd(key: &str, m: Option<&CMatrix>, n: usize) -> Result<PdMatrix, LoadError> {
    let m = m.ok_or_else(|| schema(key, "required for type1 problems"))?;
    if m.dim() != n {
        return Err(schema(
            key,
            format!("is {0}x{0}, expected {n}x{n}", m.dim()),
        ));
    }
    let h = Hermitian::new(m.clone()).map_err(|e| schema(key, e))?;
    PdMatrix::new(h).map_err(|e| schema(key, e))
}

fn function(key: &str, repr: &FunctionRepr, n: usize) -> Result<MatrixFunction, LoadError> {
    match repr {
        FunctionRepr::Power { exponent } => {
            MatrixFunction::power(*exponent).map_err(|e| schema(key, e))
        }
        FunctionRepr::Constant { value } => {
            if value.dim() != n {
                return Err(schema(
                    key,
                    format!("constant value is {0}x{0}, expected {n}x{n}", value.dim()),
                ));
            }
            let v = PdMatrix::from_matrix(value.clone()).map_err(|e| schema(key, e))?;
            Ok(MatrixFunction::constant(v))
        }
    }
}

fn function_repr(f: &MatrixFunction) -> FunctionRepr {
    match f {
        MatrixFunction::Power(exponent) => FunctionRepr::Power {
            exponent: *exponent,
        },
        MatrixFunction::Constant(c) => FunctionRepr::Constant {
            value: c.matrix().clone(),
        },
    }
}

impl ProblemFile {
    pub fn from_json(text: &str) -> Result<Self, LoadError> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("problem files always serialize")
    }

    /// Validates the document and builds the typed problem.
    pub fn load(&self) -> Result<LoadedProblem, LoadError> {
        let n = self.n;
        if n == 0 {
            return Err(schema("n", "dimension must be positive"));
        }
        if self.m == 0 {
            return Err(schema("m", "need at least one coefficient matrix"));
        }
        if self.coefficients.len() != self.m {
            return Err(schema(
                "A",
                format!(
                    "has {} matrices but m = {}",
                    self.coefficients.len(),
                    self.m
                ),
            ));
        }
        for (i, a) in self.coefficients.iter().enumerate() {
            if a.dim() != n {
                return Err(schema(
                    format!("A[{i}]"),
                    format!("is {0}x{0}, expected {n}x{n}", a.dim()),
                ));
            }
        }
        let f = function("F", &self.f, n)?;
        let g = function("G", &self.g, n)?;

        let problem = match self.kind.as_str() {
            "type1" => {
                if self.r.is_some() {
                    return Err(schema("r", "only valid for type2 problems"));
                }
                let q1 = pd("Q1", self.q1.as_ref(), n)?;
                let q2 = pd("Q2", self.q2.as_ref(), n)?;
                ProblemSpec {
                    kind: ProblemKind::Type1 { q1, q2 },
                    coefficients: self.coefficients.clone(),
                    s: self.s,
                    f,
                    g,
                    radius: self.a,
                    l: self.l,
                }
            }
            "type2" => {
                if self.q1.is_some() || self.q2.is_some() {
                    return Err(schema(
                        if self.q1.is_some() { "Q1" } else { "Q2" },
                        "only valid for type1 problems",
                    ));
                }
                let r = self
                    .r
                    .ok_or_else(|| schema("r", "required for type2 problems"))?;
                ProblemSpec {
                    kind: ProblemKind::Type2 { r },
                    coefficients: self.coefficients.clone(),
                    s: self.s,
                    f,
                    g,
                    radius: self.a,
                    l: self.l,
                }
            }
            other => {
                return Err(schema(
                    "kind",
                    format!("expected \"type1\" or \"type2\", got {other:?}"),
                ))
            }
        };
        problem.validate().map_err(|e| {
            let text = e.to_string();
            // validation messages lead with the key they concern
            let key = text
                .trim_start_matches("invalid problem: ")
                .split(':')
                .next()
                .unwrap_or("problem")
                .to_string();
            schema(key, text)
        })?;

        let x0 = match &self.x0 {
            None => PdMatrix::identity(n),
            Some(repr) => parse_start(repr, n)?,
        };

        let mut options = SolveOptions::default();
        if let Some(o) = &self.options {
            if let Some(v) = o.gap_tol {
                options.gap_tol = v;
            }
            if let Some(v) = o.residual_tol {
                options.residual_tol = v;
            }
            if let Some(v) = o.max_iter {
                if v == 0 {
                    return Err(schema("options.max_iter", "must be at least 1"));
                }
                options.max_iter = v;
            }
            if let Some(v) = o.seed {
                options.seed = v;
            }
            if let Some(v) = o.samples {
                if v == 0 {
                    return Err(schema("options.samples", "must be at least 1"));
                }
                options.samples = v;
            }
            if let Some(v) = o.force {
                options.force = v;
            }
        }
        Ok(LoadedProblem {
            problem,
            x0,
            options,
        })
    }

    /// Inverse of [`ProblemFile::load`] for the problem itself; the start
    /// point is written as a matrix unless it is the identity.
    pub fn from_problem(
        problem: &ProblemSpec,
        x0: Option<&PdMatrix>,
        options: Option<FileOptions>,
    ) -> Self {
        let (q1, q2, r) = match &problem.kind {
            ProblemKind::Type1 { q1, q2 } => {
                (Some(q1.matrix().clone()), Some(q2.matrix().clone()), None)
            }
            ProblemKind::Type2 { r } => (None, None, Some(*r)),
        };
        let x0 = x0.map(|x| {
            if *x == PdMatrix::identity(x.dim()) {
                StartRepr::Named("identity".into())
            } else {
                StartRepr::Matrix(x.matrix().clone())
            }
        });
        Self {
            kind: problem.kind_name().to_string(),
            n: problem.n(),
            m: problem.m(),
            s: problem.s,
            r,
            coefficients: problem.coefficients.clone(),
            q1,
            q2,
            f: function_repr(&problem.f),
            g: function_repr(&problem.g),
            a: problem.radius,
            l: problem.l,
            x0,
            options,
        }
    }
}

pub fn read_problem(path: &Path) -> Result<LoadedProblem, LoadError> {
    let text = std::fs::read_to_string(path).map_err(|e| LoadError::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })?;
    ProblemFile::from_json(&text)?.load()
}

/// Reads a start matrix from a JSON file holding a matrix literal (or the
/// string `"identity"`).
pub fn read_start(path: &Path, n: usize) -> Result<PdMatrix, LoadError> {
    let text = std::fs::read_to_string(path).map_err(|e| LoadError::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })?;
    let repr: StartRepr = serde_json::from_str(&text)?;
    parse_start(&repr, n)
}
