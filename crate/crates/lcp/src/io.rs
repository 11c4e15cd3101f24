//! Problem-file format: UTF-8 JSON with schema
//! `{"n": int, "M": [[f64; n]; n], "q": [f64; n], "x0"?: [f64; n], "name"?: string}`.

use std::path::Path;

use nalgebra::{DMatrix, DVector};
use serde::Deserialize;
use thiserror::Error;

use crate::error::LcpError;
use crate::model::LcpProblem;

#[derive(Debug, Error)]
pub enum ProblemFileError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("malformed problem file: {0}")]
    Json(#[from] serde_json::Error),
    #[error("field {field}: expected {expected} entries, got {found}")]
    BadShape {
        field: &'static str,
        expected: usize,
        found: usize,
    },
    #[error("invalid problem data: {0}")]
    Invalid(#[from] LcpError),
}

/// Raw deserialized problem file before shape validation.
#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawProblemFile {
    n: usize,
    #[serde(rename = "M")]
    m: Vec<Vec<f64>>,
    q: Vec<f64>,
    #[serde(default)]
    x0: Option<Vec<f64>>,
    #[serde(default)]
    name: Option<String>,
}

/// A validated problem file.
#[derive(Debug, Clone)]
pub struct ProblemFile {
    pub problem: LcpProblem,
    pub x0: Option<DVector<f64>>,
    pub name: Option<String>,
}

/// Parses and validates a problem document from JSON text.
pub fn parse_problem_str(text: &str) -> Result<ProblemFile, ProblemFileError> {
    let raw: RawProblemFile = serde_json::from_str(text)?;
    let n = raw.n;
    if raw.m.len() != n {
        return Err(ProblemFileError::BadShape {
            field: "M",
            expected: n,
            found: raw.m.len(),
        });
    }
    for row in &raw.m {
        if row.len() != n {
            return Err(ProblemFileError::BadShape {
                field: "M (row)",
                expected: n,
                found: row.len(),
            });
        }
    }
    if raw.q.len() != n {
        return Err(ProblemFileError::BadShape {
            field: "q",
            expected: n,
            found: raw.q.len(),
        });
    }
    if let Some(x0) = &raw.x0 {
        if x0.len() != n {
            return Err(ProblemFileError::BadShape {
                field: "x0",
                expected: n,
                found: x0.len(),
            });
        }
    }
    let m = DMatrix::from_fn(n, n, |r, c| raw.m[r][c]);
    let q = DVector::from_vec(raw.q);
    let problem = LcpProblem::new(m, q)?;
    Ok(ProblemFile {
        problem,
        x0: raw.x0.map(DVector::from_vec),
        name: raw.name,
    })
}

/// Parses a problem document from a file path.
pub fn parse_problem_path(path: &Path) -> Result<ProblemFile, ProblemFileError> {
    let text = std::fs::read_to_string(path).map_err(|source| ProblemFileError::Io {
        path: path.display().to_string(),
        source,
    })?;
    parse_problem_str(&text)
}
