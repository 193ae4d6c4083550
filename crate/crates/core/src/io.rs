//! JSON input formats.
//!
//! * polynomial: `{"coeffs": [c0, c1, ...]}` in ascending order, or
//!   `{"roots": [{"re", "im", "mult"}], "leading": c}`;
//! * point set or measure: `{"atoms": [{"re", "im", "w"}]}`, `w` defaulting to 1;
//! * matrix: `{"matrix": [[...], ...]}` row-major, or a bare array of rows;
//! * Toeplitz instance: `{"a": [a1, ..., a_{n-1}]}`;
//! * cubic circulant: `{"circulant": {"a": c, "b": c}}`.
//!
//! A complex number `c` is `[re, im]`, `{"re", "im"}` or a bare real.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::cauchy::PointMeasure;
use crate::error::{Error, Result};
use crate::linalg::ComplexMatrix;
use crate::poly::{Polynomial, Root, RootMultiset};
use crate::search::Instance;

type C64 = Complex64;

fn parse_error(msg: impl Into<String>) -> Error {
    Error::Parse(msg.into())
}

pub fn complex_from_value(v: &Value) -> Result<C64> {
    let num = |x: &Value| x.as_f64().ok_or_else(|| parse_error(format!("expected a number, got {x}")));
    match v {
        Value::Number(_) => Ok(C64::new(num(v)?, 0.0)),
        Value::Array(a) if a.len() == 2 => Ok(C64::new(num(&a[0])?, num(&a[1])?)),
        Value::Object(o) => Ok(C64::new(
            o.get("re").map(num).transpose()?.unwrap_or(0.0),
            o.get("im").map(num).transpose()?.unwrap_or(0.0),
        )),
        _ => Err(parse_error(format!("expected a complex number, got {v}"))),
    }
}

fn complex_list(v: &Value) -> Result<Vec<C64>> {
    v.as_array()
        .ok_or_else(|| parse_error("expected an array"))?
        .iter()
        .map(complex_from_value)
        .collect()
}

pub fn polynomial_from_value(v: &Value) -> Result<Polynomial> {
    if let Some(c) = v.get("coeffs") {
        return Polynomial::new(complex_list(c)?);
    }
    if let Some(r) = v.get("roots") {
        let entries = r
            .as_array()
            .ok_or_else(|| parse_error("roots must be an array"))?
            .iter()
            .map(|e| {
                let multiplicity = match e.get("mult") {
                    None => 1,
                    Some(m) => m.as_u64().filter(|&m| m > 0).ok_or_else(|| parse_error("mult must be a positive integer"))? as usize,
                };
                Ok(Root {
                    location: complex_from_value(e)?,
                    multiplicity,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let leading = v.get("leading").map(complex_from_value).transpose()?.unwrap_or(C64::new(1.0, 0.0));
        return Polynomial::from_roots(&RootMultiset::new(entries)?, leading);
    }
    Err(parse_error("a polynomial needs \"coeffs\" or \"roots\""))
}

pub fn measure_from_value(v: &Value) -> Result<PointMeasure> {
    serde_json::from_value(v.clone()).map_err(|e| parse_error(e.to_string()))
}

pub fn matrix_from_value(v: &Value) -> Result<ComplexMatrix> {
    let rows = v.get("matrix").unwrap_or(v);
    let rows = rows.as_array().ok_or_else(|| parse_error("a matrix is an array of rows"))?;
    let rows = rows.iter().map(complex_list).collect::<Result<Vec<_>>>()?;
    ComplexMatrix::from_rows(&rows)
}

/// A parsed input of any of the supported shapes.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Input {
    Polynomial { polynomial: Polynomial },
    Measure { measure: PointMeasure },
    Matrix { matrix: ComplexMatrix },
    Toeplitz { a: Vec<C64> },
    Circulant { a: C64, b: C64 },
}

impl From<Instance> for Input {
    fn from(i: Instance) -> Self {
        match i {
            Instance::Polynomial { polynomial } => Input::Polynomial { polynomial },
            Instance::Measure { measure } => Input::Measure { measure },
            Instance::Circulant { a, b } => Input::Circulant { a, b },
        }
    }
}

pub fn input_from_value(v: &Value) -> Result<Input> {
    if v.is_array() || v.get("matrix").is_some() {
        return Ok(Input::Matrix {
            matrix: matrix_from_value(v)?,
        });
    }
    if v.get("coeffs").is_some() || v.get("roots").is_some() {
        return Ok(Input::Polynomial {
            polynomial: polynomial_from_value(v)?,
        });
    }
    if v.get("atoms").is_some() {
        return Ok(Input::Measure {
            measure: measure_from_value(v)?,
        });
    }
    if let Some(a) = v.get("a") {
        return Ok(Input::Toeplitz { a: complex_list(a)? });
    }
    if let Some(c) = v.get("circulant") {
        let get = |k: &str| c.get(k).ok_or_else(|| parse_error(format!("circulant needs \"{k}\""))).and_then(complex_from_value);
        return Ok(Input::Circulant { a: get("a")?, b: get("b")? });
    }
    Err(parse_error("unrecognized input shape"))
}

pub fn parse_input(text: &str) -> Result<Input> {
    let v: Value = serde_json::from_str(text).map_err(|e| parse_error(e.to_string()))?;
    input_from_value(&v)
}
