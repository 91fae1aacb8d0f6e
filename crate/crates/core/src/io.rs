//! JSON file formats for curvature operators and Berger data.
//!
//! ```json
//! {"format": "curv4-op-v1", "basis": "e12,e13,e14,e34,e42,e23",
//!  "matrix": [[...], ...], "einstein_lambda": 1.0, "exact": [["1/3", ...], ...]}
//! {"format": "curv4-berger-v1", "a": [a1, a2, a3], "b": [b1, b2, b3], "lambda": 1.0}
//! ```

use nalgebra::Matrix6;
use serde::{Deserialize, Serialize};

use crate::berger::BergerData;
use crate::classify::CurvatureInput;
use crate::curvature::bivector::BASIS_STRING;
use crate::curvature::operator::ExactMatrix;
use crate::curvature::CurvatureOperator;
use crate::error::{Error, Result};
use crate::exact::{format_rational, parse_rational, to_f64, Rational};

pub const OPERATOR_FORMAT: &str = "curv4-op-v1";
pub const BERGER_FORMAT: &str = "curv4-berger-v1";

/// Allowed gap between `matrix` and `exact` entries, relative to the entry.
pub const EXACT_MISMATCH_TOL: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OperatorFile {
    pub basis: String,
    pub matrix: [[f64; 6]; 6],
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub einstein_lambda: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub exact: Option<[[String; 6]; 6]>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BergerFile {
    pub a: [f64; 3],
    pub b: [f64; 3],
    pub lambda: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "format")]
pub enum CurvatureFile {
    #[serde(rename = "curv4-op-v1")]
    Operator(OperatorFile),
    #[serde(rename = "curv4-berger-v1")]
    Berger(BergerFile),
}

fn format_error(e: serde_json::Error) -> Error {
    Error::Format(e.to_string())
}

fn check_basis(basis: &str) -> Result<()> {
    let normalized: String = basis.chars().filter(|c| !c.is_whitespace()).collect();
    if normalized != BASIS_STRING {
        return Err(Error::Format(format!(
            "unsupported basis {basis:?}, expected {BASIS_STRING:?}"
        )));
    }
    Ok(())
}

fn exact_entries(text: &[[String; 6]; 6], matrix: &[[f64; 6]; 6]) -> Result<ExactMatrix> {
    let mut out = [[Rational::from_integer(0); 6]; 6];
    for i in 0..6 {
        for j in 0..6 {
            let v = parse_rational(&text[i][j])?;
            let x = matrix[i][j];
            if (to_f64(&v) - x).abs() > EXACT_MISMATCH_TOL * x.abs().max(1.0) {
                return Err(Error::Format(format!(
                    "exact entry ({i},{j}) = {} does not match matrix entry {x}",
                    text[i][j]
                )));
            }
            out[i][j] = v;
        }
    }
    Ok(out)
}

impl OperatorFile {
    pub fn to_operator(&self) -> Result<CurvatureOperator> {
        check_basis(&self.basis)?;
        let Some(text) = &self.exact else {
            let m = Matrix6::from_fn(|i, j| self.matrix[i][j]);
            return CurvatureOperator::new(m, self.einstein_lambda);
        };
        let exact = exact_entries(text, &self.matrix)?;
        let Some(lambda) = self.einstein_lambda else {
            return CurvatureOperator::from_exact(exact, None);
        };
        // take λ from the exact Ricci tensor; the decimal only has to agree
        let rc = CurvatureOperator::from_exact(exact, None)?
            .exact_ricci()
            .expect("operator built from exact entries");
        let exact_lambda = rc[0][0];
        if (to_f64(&exact_lambda) - lambda).abs() > EXACT_MISMATCH_TOL * lambda.abs().max(1.0) {
            return Err(Error::Format(format!(
                "einstein_lambda = {lambda} does not match the exact Ricci entry {}",
                format_rational(&exact_lambda)
            )));
        }
        CurvatureOperator::from_exact(exact, Some(exact_lambda))
    }

    pub fn from_operator(op: &CurvatureOperator) -> Self {
        let m = op.matrix();
        Self {
            basis: BASIS_STRING.into(),
            matrix: std::array::from_fn(|i| std::array::from_fn(|j| m[(i, j)])),
            einstein_lambda: op.lambda_einstein(),
            exact: op.exact().map(|e| {
                std::array::from_fn(|i| std::array::from_fn(|j| format_rational(&e[i][j])))
            }),
        }
    }
}

impl BergerFile {
    pub fn to_berger(&self) -> Result<BergerData> {
        BergerData::new(self.a, self.b, self.lambda)
    }

    pub fn from_berger(d: &BergerData) -> Self {
        Self {
            a: d.a,
            b: d.b,
            lambda: d.lambda_einstein,
        }
    }
}

impl CurvatureFile {
    pub fn to_input(&self) -> Result<CurvatureInput> {
        Ok(match self {
            Self::Operator(f) => CurvatureInput::Operator(f.to_operator()?),
            Self::Berger(f) => CurvatureInput::Berger(f.to_berger()?),
        })
    }

    pub fn from_input(input: &CurvatureInput) -> Self {
        match input {
            CurvatureInput::Operator(op) => Self::Operator(OperatorFile::from_operator(op)),
            CurvatureInput::Berger(d) => Self::Berger(BergerFile::from_berger(d)),
        }
    }
}

/// Parse either file format.
pub fn parse_input(text: &str) -> Result<CurvatureInput> {
    let file: CurvatureFile = serde_json::from_str(text).map_err(format_error)?;
    file.to_input()
}

pub fn to_json(input: &CurvatureInput) -> Result<String> {
    serde_json::to_string_pretty(&CurvatureFile::from_input(input)).map_err(format_error)
}

/// Read and parse a file.
pub fn read_input(path: &std::path::Path) -> Result<CurvatureInput> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Format(format!("{}: {e}", path.display())))?;
    parse_input(&text)
}
