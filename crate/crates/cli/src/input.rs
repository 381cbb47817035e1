//! The input document `{"name"?: string, "matrix": [[int | "p/q", …], …]}`.

use std::fmt;

use plov_core::algebra::{parse_rational, to_exact_string, RatMatrix, Rational};
use serde::{Deserialize, Serialize};
use serde_json::Value;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InputDocument {
    pub name: Option<String>,
    pub matrix: RatMatrix,
}

/// The input as echoed in reports: entries in canonical `p/q` form.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InputEcho {
    pub name: Option<String>,
    pub dimension: usize,
    pub matrix: Vec<Vec<String>>,
}

impl InputDocument {
    pub fn echo(&self) -> InputEcho {
        InputEcho {
            name: self.name.clone(),
            dimension: self.matrix.dim(),
            matrix: self
                .matrix
                .rows()
                .iter()
                .map(|r| r.iter().map(to_exact_string).collect())
                .collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum InputError {
    Syntax { line: usize, column: usize, message: String },
    Structure { field: String, message: String },
    NotSquare { row: usize, len: usize, expected: usize },
    Entry { field: String, text: String, reason: String },
}

impl fmt::Display for InputError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            InputError::Syntax { line, column, message } => {
                write!(f, "malformed document at line {line}, column {column}: {message}")
            }
            InputError::Structure { field, message } => write!(f, "{field}: {message}"),
            InputError::NotSquare { row, len, expected } => write!(
                f,
                "matrix is not square: matrix[{row}] has {len} entries, expected {expected}"
            ),
            InputError::Entry { field, text, reason } => {
                write!(f, "{field}: cannot read {text:?} as an exact rational ({reason})")
            }
        }
    }
}

impl std::error::Error for InputError {}

fn structure(field: &str, message: impl Into<String>) -> InputError {
    InputError::Structure { field: field.into(), message: message.into() }
}

/// Parses without any floating-point intermediate: numbers are read from
/// their literal text.
pub fn parse_input(bytes: &[u8]) -> Result<InputDocument, InputError> {
    let value: Value = serde_json::from_slice(bytes).map_err(|e| InputError::Syntax {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    let Value::Object(obj) = value else {
        return Err(structure("$", "expected an object with a \"matrix\" field"));
    };
    if let Some(key) = obj.keys().find(|k| *k != "name" && *k != "matrix") {
        return Err(structure(key, "unknown field"));
    }
    let name = match obj.get("name") {
        None | Some(Value::Null) => None,
        Some(Value::String(s)) => Some(s.clone()),
        Some(_) => return Err(structure("name", "expected a string")),
    };
    let rows = match obj.get("matrix") {
        Some(Value::Array(rows)) => rows,
        Some(_) => return Err(structure("matrix", "expected an array of rows")),
        None => return Err(structure("matrix", "missing")),
    };
    if rows.is_empty() {
        return Err(structure("matrix", "dimension must be at least 1"));
    }
    let dim = rows.len();
    let mut parsed = Vec::with_capacity(dim);
    for (i, row) in rows.iter().enumerate() {
        let Value::Array(entries) = row else {
            return Err(structure(&format!("matrix[{i}]"), "expected an array of entries"));
        };
        if entries.len() != dim {
            return Err(InputError::NotSquare { row: i, len: entries.len(), expected: dim });
        }
        let mut out = Vec::with_capacity(dim);
        for (j, entry) in entries.iter().enumerate() {
            out.push(parse_entry(entry, &format!("matrix[{i}][{j}]"))?);
        }
        parsed.push(out);
    }
    let matrix = RatMatrix::from_rows(parsed).map_err(|e| structure("matrix", e.to_string()))?;
    Ok(InputDocument { name, matrix })
}

fn parse_entry(entry: &Value, field: &str) -> Result<Rational, InputError> {
    let text = match entry {
        Value::Number(n) => n.to_string(),
        Value::String(s) => s.clone(),
        _ => return Err(structure(field, "expected an integer or a \"p/q\" string")),
    };
    parse_rational(&text).map_err(|e| InputError::Entry {
        field: field.into(),
        text: text.clone(),
        reason: e.reason.into(),
    })
}
