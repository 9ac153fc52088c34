//! Independent replay of the certificates carried by failing reports.

use std::path::Path;

use serde_json::{json, Value};

use super::document::{document_from_json, Workspace};
use super::json::*;
use super::report::*;
use super::{run_command, Command};
use crate::algebra::NilpotentCertificate;
use crate::error::{Error, Result};
use crate::linalg::form;
use crate::rings::Sign;

pub(crate) fn check_certificate_file(path: &Path) -> Result<Response> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::SyntaxError {
        path: path.display().to_string(),
        message: e.to_string(),
    })?;
    let v: Value = serde_json::from_str(&text).map_err(|e| Error::SyntaxError {
        path: format!("line {} column {}", e.line(), e.column()),
        message: e.to_string(),
    })?;
    check_certificate(&v)
}

/// Replays a certificate, or the `certificate` field of a report. `Ok`
/// responses confirm it; `Failed` responses reject it.
pub fn check_certificate(v: &Value) -> Result<Response> {
    let cert = v.get("certificate").unwrap_or(v);
    let obj = object(cert, "$")?;
    let kind = string(field(obj, "kind", "$")?, "$.kind")?;
    let verdict = match kind.as_str() {
        "psd_witness" => psd_witness(obj),
        "nilpotent" => nilpotent(obj),
        "recheck" => recheck(obj),
        other => return Err(syntax("$.kind", format!("unknown certificate kind {other:?}"))),
    }?;
    let result = json!({"kind": kind, "valid": verdict.is_ok()});
    Ok(match verdict {
        Ok(msg) => Response::ok(result, msg),
        Err(msg) => Response {
            status: Status::Failed,
            result,
            certificate: None,
            summary: format!("certificate rejected: {msg}"),
        },
    })
}

type Verdict = std::result::Result<String, String>;

fn psd_witness(obj: &serde_json::Map<String, Value>) -> Result<Verdict> {
    let m = matrix_from_json(field(obj, "matrix", "$")?, "$.matrix")?;
    let w = vector_from_json(field(obj, "witness", "$")?, "$.witness")?;
    if m.rows() != m.cols() || w.len() != m.rows() {
        return Ok(Err("shape mismatch".into()));
    }
    if !m.is_hermitian() {
        return Ok(Err("matrix is not Hermitian".into()));
    }
    let value = form(&m, &w, &w);
    Ok(if value.sign() == Sign::Negative {
        Ok(format!("⟨w, M w⟩ = {value} < 0"))
    } else {
        Err(format!("⟨w, M w⟩ = {value} is not negative"))
    })
}

fn nilpotent(obj: &serde_json::Map<String, Value>) -> Result<Verdict> {
    let doc = document_from_json(field(obj, "document", "$")?)?;
    let name = string(field(obj, "algebra", "$")?, "$.algebra")?;
    let alg = Workspace::new(&doc).algebra(&name)?;
    let cert = NilpotentCertificate {
        element: vector_from_json(field(obj, "element", "$")?, "$.element")?,
        exponent: field(obj, "exponent", "$")?
            .as_u64()
            .and_then(|e| u32::try_from(e).ok())
            .ok_or_else(|| syntax("$.exponent", "expected a small non-negative integer"))?,
        description: String::new(),
    };
    Ok(match cert.replay(&alg) {
        Ok(()) => Ok(format!("nonzero normal element with h^{} = 0", cert.exponent)),
        Err(e) => Err(e.to_string()),
    })
}

fn recheck(obj: &serde_json::Map<String, Value>) -> Result<Verdict> {
    let doc = match obj.get("document") {
        None | Some(Value::Null) => None,
        Some(d) => Some(document_from_json(d)?),
    };
    let name = string(field(obj, "command", "$")?, "$.command")?;
    let args = array(field(obj, "args", "$")?, "$.args")?
        .iter()
        .enumerate()
        .map(|(k, a)| string(a, &format!("$.args[{k}]")))
        .collect::<Result<Vec<_>>>()?;
    let seed = obj.get("seed").and_then(Value::as_u64).unwrap_or(0);
    let expect = obj.get("expect_exit").and_then(Value::as_i64).unwrap_or(1) as i32;
    let command = Command::from_args(&name, &args)?;
    if matches!(command, Command::CheckCertificate { .. }) {
        return Ok(Err("a recheck may not run check-certificate".into()));
    }
    let resp = run_command(doc.as_ref(), &command, seed);
    let got = resp.status.exit_code();
    Ok(if got == expect {
        Ok(format!("{name} exits {got}: {}", resp.summary))
    } else {
        Err(format!("{name} exits {got}, expected {expect}"))
    })
}
