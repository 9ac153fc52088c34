//! Exact vectors, matrices and tensors as JSON, with field paths in errors.

use serde_json::{Map, Value};

use crate::error::{Error, Result};
use crate::linalg::{Matrix, PsdCertificate, Vector};
use crate::rings::codec::{frac_from_json, frac_to_json};
use crate::rings::FracScalar;

pub(crate) fn syntax(path: &str, message: impl Into<String>) -> Error {
    Error::SyntaxError {
        path: path.to_string(),
        message: message.into(),
    }
}

pub fn vector_to_json(v: &[FracScalar]) -> Value {
    Value::Array(v.iter().map(frac_to_json).collect())
}

pub fn matrix_to_json(m: &Matrix) -> Value {
    Value::Array((0..m.rows()).map(|i| vector_to_json(m.row(i))).collect())
}

pub fn vectors_to_json(vs: &[Vector]) -> Value {
    Value::Array(vs.iter().map(|v| vector_to_json(v)).collect())
}

pub fn matrices_to_json(ms: &[Matrix]) -> Value {
    Value::Array(ms.iter().map(matrix_to_json).collect())
}

pub fn tensor_to_json(h: &[Vec<Vector>]) -> Value {
    Value::Array(h.iter().map(|row| vectors_to_json(row)).collect())
}

pub(crate) fn array<'a>(v: &'a Value, path: &str) -> Result<&'a Vec<Value>> {
    v.as_array().ok_or_else(|| syntax(path, "expected an array"))
}

pub(crate) fn object<'a>(v: &'a Value, path: &str) -> Result<&'a Map<String, Value>> {
    v.as_object().ok_or_else(|| syntax(path, "expected an object"))
}

pub(crate) fn field<'a>(obj: &'a Map<String, Value>, key: &str, path: &str) -> Result<&'a Value> {
    obj.get(key)
        .ok_or_else(|| syntax(path, format!("missing field {key:?}")))
}

pub(crate) fn string(v: &Value, path: &str) -> Result<String> {
    v.as_str().map(str::to_string).ok_or_else(|| syntax(path, "expected a string"))
}

pub(crate) fn usize_of(v: &Value, path: &str) -> Result<usize> {
    v.as_u64()
        .map(|n| n as usize)
        .ok_or_else(|| syntax(path, "expected a non-negative integer"))
}

pub fn vector_from_json(v: &Value, path: &str) -> Result<Vector> {
    array(v, path)?
        .iter()
        .enumerate()
        .map(|(k, x)| frac_from_json(x, &format!("{path}[{k}]")))
        .collect()
}

pub fn vectors_from_json(v: &Value, path: &str) -> Result<Vec<Vector>> {
    array(v, path)?
        .iter()
        .enumerate()
        .map(|(k, x)| vector_from_json(x, &format!("{path}[{k}]")))
        .collect()
}

pub fn matrix_from_json(v: &Value, path: &str) -> Result<Matrix> {
    let rows = vectors_from_json(v, path)?;
    Matrix::from_rows(rows).map_err(|_| syntax(path, "rows of unequal length"))
}

pub fn matrices_from_json(v: &Value, path: &str) -> Result<Vec<Matrix>> {
    array(v, path)?
        .iter()
        .enumerate()
        .map(|(k, x)| matrix_from_json(x, &format!("{path}[{k}]")))
        .collect()
}

pub fn tensor_from_json(v: &Value, path: &str) -> Result<Vec<Vec<Vector>>> {
    array(v, path)?
        .iter()
        .enumerate()
        .map(|(k, x)| vectors_from_json(x, &format!("{path}[{k}]")))
        .collect()
}

pub fn psd_certificate_to_json(c: &PsdCertificate) -> Value {
    serde_json::json!({
        "verdict": c.verdict,
        "basis": matrix_to_json(&c.basis),
        "diagonal": vector_to_json(&c.diagonal),
        "witness": c.witness.as_ref().map(|w| vector_to_json(w)),
    })
}
