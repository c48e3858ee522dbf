//! Matrix text formats.
//!
//! * CSV: one matrix row per line, comma-separated literals.
//! * JSON: `{"rows": m, "cols": n, "data": [row-major scalars]}`.
//!
//! Literals are decimal numbers or `"p/q"` rationals. Exact matrices
//! serialize every entry as a string literal so round-trips are lossless;
//! float matrices use JSON numbers (shortest round-trip representation).

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::scalar::{parse_rational, rational_literal, Rational, Scalar};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Csv,
    Json,
}

/// Scalars that can be read from and written to the text formats.
pub trait Literal: Scalar {
    fn parse_literal(text: &str) -> Option<Self>;
    fn from_json(value: &Value) -> Option<Self>;
    fn to_json(&self) -> Value;
}

impl Literal for Rational {
    fn parse_literal(text: &str) -> Option<Self> {
        parse_rational(text)
    }

    fn from_json(value: &Value) -> Option<Self> {
        match value {
            // serde_json renders numbers in their shortest exact decimal form.
            Value::Number(n) => parse_rational(&n.to_string()),
            Value::String(s) => parse_rational(s),
            _ => None,
        }
    }

    fn to_json(&self) -> Value {
        Value::String(rational_literal(self))
    }
}

impl Literal for f64 {
    fn parse_literal(text: &str) -> Option<Self> {
        let t = text.trim();
        match t.parse::<f64>() {
            Ok(v) if v.is_finite() => Some(v),
            Ok(_) => None,
            Err(_) if t.contains('/') => parse_rational(t).map(|r| r.to_f64()),
            Err(_) => None,
        }
    }

    fn from_json(value: &Value) -> Option<Self> {
        match value {
            Value::Number(n) => n.as_f64(),
            Value::String(s) => Self::parse_literal(s),
            _ => None,
        }
    }

    fn to_json(&self) -> Value {
        json!(*self)
    }
}

fn parse_err<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Parse(msg.into()))
}

pub fn parse_csv<S: Literal>(text: &str) -> Result<Matrix<S>> {
    let mut rows: Vec<Vec<S>> = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let row = line
            .split(',')
            .enumerate()
            .map(|(k, field)| {
                S::parse_literal(field).ok_or_else(|| {
                    Error::Parse(format!("line {}, field {}: malformed literal {:?}", lineno + 1, k + 1, field.trim()))
                })
            })
            .collect::<Result<Vec<S>>>()?;
        if let Some(first) = rows.first() {
            if first.len() != row.len() {
                return parse_err(format!(
                    "line {}: ragged row with {} fields, expected {}",
                    lineno + 1,
                    row.len(),
                    first.len()
                ));
            }
        }
        rows.push(row);
    }
    if rows.is_empty() {
        return parse_err("empty CSV input");
    }
    Matrix::from_rows(&rows).map_err(|e| Error::Parse(e.to_string()))
}

pub fn parse_json<S: Literal>(text: &str) -> Result<Matrix<S>> {
    let value: Value = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    matrix_from_json(&value)
}

pub fn matrix_from_json<S: Literal>(value: &Value) -> Result<Matrix<S>> {
    let dim = |key: &str| -> Result<usize> {
        value
            .get(key)
            .and_then(Value::as_u64)
            .map(|v| v as usize)
            .ok_or_else(|| Error::Parse(format!("missing or invalid {key:?}")))
    };
    let (rows, cols) = (dim("rows")?, dim("cols")?);
    let data =
        value.get("data").and_then(Value::as_array).ok_or_else(|| Error::Parse("missing \"data\" array".into()))?;
    if data.len() != rows * cols {
        return parse_err(format!("data has {} entries but shape is {rows}x{cols}", data.len()));
    }
    let data = data
        .iter()
        .enumerate()
        .map(|(k, v)| S::from_json(v).ok_or_else(|| Error::Parse(format!("data[{k}]: malformed scalar {v}"))))
        .collect::<Result<Vec<S>>>()?;
    Matrix::new(rows, cols, data).map_err(|e| Error::Parse(e.to_string()))
}

pub fn matrix_to_json<S: Literal>(a: &Matrix<S>) -> Value {
    json!({
        "rows": a.rows(),
        "cols": a.cols(),
        "data": a.data().iter().map(Literal::to_json).collect::<Vec<_>>(),
    })
}

pub fn parse_matrix<S: Literal>(text: &str, format: Format) -> Result<Matrix<S>> {
    match format {
        Format::Csv => parse_csv(text),
        Format::Json => parse_json(text),
    }
}

/// A vector given as a single column or a single row.
pub fn parse_vector<S: Literal>(text: &str, format: Format) -> Result<Vec<S>> {
    let m = parse_matrix::<S>(text, format)?;
    match m.shape() {
        (_, 1) | (1, _) => Ok(m.data().to_vec()),
        (r, c) => parse_err(format!("expected a vector, got a {r}x{c} matrix")),
    }
}
