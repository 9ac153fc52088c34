//! Report envelopes and JSON views of library objects.

use serde_json::{json, Value};

use super::json::*;
use crate::bimodule::Bimodule;
use crate::error::Error;
use crate::linalg::{Matrix, Quotient};
use crate::prehilbert::{Intertwiner, Representation};
use crate::report::Report;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Ok,
    Failed,
    InputError,
}

impl Status {
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Ok => 0,
            Status::Failed => 1,
            Status::InputError => 2,
        }
    }

    fn name(self) -> &'static str {
        match self {
            Status::Ok => "ok",
            Status::Failed => "failed",
            Status::InputError => "input_error",
        }
    }
}

/// Structured result of one command.
#[derive(Clone, Debug)]
pub struct Response {
    pub status: Status,
    pub result: Value,
    pub certificate: Option<Value>,
    pub summary: String,
}

impl Response {
    pub fn ok(result: Value, summary: impl Into<String>) -> Self {
        Response {
            status: Status::Ok,
            result,
            certificate: None,
            summary: summary.into(),
        }
    }

    pub fn failed(result: Value, certificate: Value, summary: impl Into<String>) -> Self {
        Response {
            status: Status::Failed,
            result,
            certificate: Some(certificate),
            summary: summary.into(),
        }
    }

    pub fn input_error(e: &Error) -> Self {
        Response {
            status: Status::InputError,
            result: error_to_json(e),
            certificate: None,
            summary: e.to_string(),
        }
    }

    pub fn to_json(&self, command: &str) -> Value {
        let mut v = json!({
            "command": command,
            "status": self.status.name(),
            "exit_code": self.status.exit_code(),
            "summary": self.summary,
            "result": self.result,
        });
        if let Some(c) = &self.certificate {
            v["certificate"] = c.clone();
        }
        v
    }
}

/// Errors that describe malformed input rather than a refuted property.
pub fn is_input_error(e: &Error) -> bool {
    matches!(
        e,
        Error::SyntaxError { .. }
            | Error::UnresolvedReference { .. }
            | Error::MalformedScalar { .. }
            | Error::UnknownCommand(_)
            | Error::ShapeMismatch(_)
            | Error::BadParams(_)
            | Error::NotInRing
            | Error::DivisionByZero
            | Error::AlgebraMismatch
            | Error::MiddleAlgebraMismatch
    )
}

pub fn error_to_json(e: &Error) -> Value {
    let mut v = json!({"error": format!("{e:?}").split(['(', ' ', '{']).next().unwrap_or(""), "message": e.to_string()});
    match e {
        Error::SyntaxError { path, .. } | Error::MalformedScalar { path, .. } => v["path"] = json!(path),
        Error::UnresolvedReference { path, name } => {
            v["path"] = json!(path);
            v["name"] = json!(name);
        }
        Error::NotPsd { witness } | Error::NotPositiveFunctional { witness } | Error::PositivityViolated { witness } => {
            v["witness"] = vector_to_json(witness)
        }
        _ => {}
    }
    v
}

pub fn report_to_json(r: &Report) -> Value {
    serde_json::to_value(r).expect("serializable")
}

pub fn representation_to_json(r: &Representation) -> Value {
    json!({"dim": r.dim(), "gram": matrix_to_json(r.gram()), "ops": matrices_to_json(&r.ops)})
}

pub fn bimodule_to_json(x: &Bimodule) -> Value {
    let mut v = json!({
        "dim": x.dim,
        "left": matrices_to_json(&x.left),
        "right": matrices_to_json(&x.right),
        "innerA": tensor_to_json(&x.inner_a),
    });
    if let Some(h) = &x.inner_b {
        v["innerB"] = tensor_to_json(h);
    }
    v
}

pub fn intertwiner_to_json(t: &Intertwiner) -> Value {
    json!({
        "matrix": matrix_to_json(&t.matrix),
        "adjointable": t.adjointable,
        "isometric": t.isometric,
        "unitary": t.unitary,
    })
}

pub fn quotient_to_json(q: &Quotient) -> Value {
    json!({
        "ambient": q.ambient,
        "dim": q.dim(),
        "kernel": vectors_to_json(&q.kernel),
        "proj": matrix_to_json(&q.proj),
        "lift": matrix_to_json(&q.lift),
    })
}

pub fn psd_witness_certificate(matrix: &Matrix, witness: &[crate::rings::FracScalar]) -> Value {
    json!({"kind": "psd_witness", "matrix": matrix_to_json(matrix), "witness": vector_to_json(witness)})
}
