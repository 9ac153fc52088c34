//! Command dispatch. Each command delegates to one library operation.

use serde_json::{json, Value};

use super::demos::run_demo;
use super::document::{Document, Workspace};
use super::json::*;
use super::report::*;
use super::{Command, LevelArg};
use crate::bimodule::{Level, ValidationOptions};
use crate::classical::{cl_bimodule, cl_prehilbert, cl_representation, naturality_check};
use crate::error::{Error, Result};
use crate::linalg::{psd_decide, Matrix};
use crate::prehilbert::gns;
use crate::rieffel::{center_isomorphism, induce, morita_context_check, roundtrip_unitary, tensor_gram};

/// What a failed run needs to produce a replayable certificate.
pub(crate) struct Context<'d> {
    pub doc: Option<&'d Document>,
    pub command: &'d Command,
    pub seed: u64,
}

impl Context<'_> {
    pub fn recheck(&self) -> Value {
        json!({
            "kind": "recheck",
            "document": self.doc.map(Document::to_json),
            "command": self.command.name(),
            "args": self.command.args(),
            "seed": self.seed,
            "expect_exit": 1,
        })
    }

    fn doc(&self) -> Result<&Document> {
        self.doc.ok_or_else(|| Error::SyntaxError {
            path: "--doc".into(),
            message: format!("command {} needs a document", self.command.name()),
        })
    }

    /// Maps an error to an input error or a failure backed by a recheck.
    pub fn from_error(&self, e: Error) -> Response {
        if is_input_error(&e) {
            Response::input_error(&e)
        } else {
            Response::failed(error_to_json(&e), self.recheck(), e.to_string())
        }
    }

    pub fn from_report(&self, mut result: Value, report: &crate::report::Report) -> Response {
        result["report"] = report_to_json(report);
        if report.passed() {
            Response::ok(result, report.summary())
        } else {
            Response::failed(result, self.recheck(), report.summary())
        }
    }
}

/// Runs one command against an optional document.
pub fn run_command(doc: Option<&Document>, command: &Command, seed: u64) -> Response {
    let ctx = Context { doc, command, seed };
    match dispatch(&ctx) {
        Ok(r) => r,
        Err(e) => ctx.from_error(e),
    }
}

fn dispatch(ctx: &Context) -> Result<Response> {
    match ctx.command {
        Command::Validate => validate(ctx),
        Command::Psd { matrix } => psd(ctx, matrix),
        Command::Gns { algebra, functional } => gns_command(ctx, algebra, functional),
        Command::Induce { bimodule, rep } => induce_command(ctx, bimodule, rep),
        Command::VerifyBimodule { bimodule, level } => verify_bimodule(ctx, bimodule, *level),
        Command::Roundtrip { bimodule, rep } => roundtrip(ctx, bimodule, rep),
        Command::Context { bimodule } => context(ctx, bimodule),
        Command::ClassicalLimit { object } => classical_limit(ctx, object),
        Command::Naturality { bimodule, rep } => naturality(ctx, bimodule, rep),
        Command::Demo { name, n } => run_demo(ctx, name, *n),
        Command::CheckCertificate { path } => super::certificate::check_certificate_file(path),
    }
}

fn validate(ctx: &Context) -> Result<Response> {
    let doc = ctx.doc()?;
    let report = Workspace::new(doc).validate_all()?;
    let counts = json!({
        "algebras": doc.algebras.len(),
        "functionals": doc.functionals.len(),
        "modules": doc.modules.len(),
        "representations": doc.representations.len(),
        "bimodules": doc.bimodules.len(),
        "matrices": doc.matrices.len(),
    });
    Ok(ctx.from_report(json!({"objects": counts}), &report))
}

fn lookup_matrix(ctx: &Context, arg: &str) -> Result<Matrix> {
    if arg.trim_start().starts_with('[') {
        let v: Value = serde_json::from_str(arg).map_err(|e| Error::SyntaxError {
            path: format!("matrix argument, column {}", e.column()),
            message: e.to_string(),
        })?;
        return matrix_from_json(&v, "$matrix");
    }
    Workspace::new(ctx.doc()?).matrix(arg)
}

fn psd(ctx: &Context, arg: &str) -> Result<Response> {
    let m = lookup_matrix(ctx, arg)?;
    let cert = match psd_decide(&m) {
        Ok(c) => c,
        Err(e @ Error::NotHermitian(_)) => return Ok(Response::input_error(&e)),
        Err(e) => return Err(e),
    };
    let result = json!({"dim": m.rows(), "certificate": psd_certificate_to_json(&cert)});
    Ok(match &cert.witness {
        None => Response::ok(result, "positive semi-definite"),
        Some(w) => Response::failed(
            result,
            psd_witness_certificate(&m, w),
            format!("not positive semi-definite; witness {}", vector_to_json(w)),
        ),
    })
}

fn gns_command(ctx: &Context, algebra: &str, functional: &str) -> Result<Response> {
    let mut ws = Workspace::new(ctx.doc()?);
    let a = ws.algebra(algebra)?;
    let (fa, f) = ws.functional(functional)?;
    if !a.same_structure(&fa) {
        return Err(Error::AlgebraMismatch);
    }
    match gns(a.clone(), &f) {
        Ok(g) => {
            let result = json!({
                "dim": g.representation.dim(),
                "gelfand_ideal": vectors_to_json(&g.gelfand_ideal),
                "vacuum": g.vacuum.as_ref().map(|v| vector_to_json(v)),
                "representation": representation_to_json(&g.representation),
                "certificate": psd_certificate_to_json(&g.certificate),
            });
            Ok(ctx.from_report(result, &g.representation.validate()))
        }
        Err(Error::NotPositiveFunctional { witness }) => Ok(Response::failed(
            json!({"error": "NotPositiveFunctional", "witness": vector_to_json(&witness)}),
            psd_witness_certificate(&f.gram(&a), &witness),
            "functional is not positive",
        )),
        Err(e) => Err(e),
    }
}

fn induce_command(ctx: &Context, bimodule: &str, rep: &str) -> Result<Response> {
    let mut ws = Workspace::new(ctx.doc()?);
    let x = ws.bimodule(bimodule)?;
    let r = ws.representation(rep)?;
    match induce(&x, &r) {
        Ok(ind) => {
            let result = json!({
                "tensor_dim": ind.tensor_dim,
                "balanced_dim": ind.balanced_dim(),
                "dim": ind.dim(),
                "certificate": psd_certificate_to_json(&ind.certificate),
                "representation": representation_to_json(&ind.representation),
            });
            Ok(ctx.from_report(result, &ind.validation))
        }
        Err(Error::PositivityViolated { witness }) => Ok(Response::failed(
            json!({"error": "PositivityViolated", "witness": vector_to_json(&witness)}),
            psd_witness_certificate(&tensor_gram(&x, &r), &witness),
            "induced inner product is not positive semi-definite",
        )),
        Err(e) => Err(e),
    }
}

fn verify_bimodule(ctx: &Context, bimodule: &str, level: LevelArg) -> Result<Response> {
    let x = Workspace::new(ctx.doc()?).bimodule(bimodule)?;
    let level = match level {
        LevelArg::Rigged => Level::Rigged,
        LevelArg::Equivalence => Level::Equivalence,
    };
    let report = x.validate(&ValidationOptions::level(level));
    Ok(ctx.from_report(json!({"dim": x.dim}), &report))
}

fn roundtrip(ctx: &Context, bimodule: &str, rep: &str) -> Result<Response> {
    let mut ws = Workspace::new(ctx.doc()?);
    let x = ws.bimodule(bimodule)?;
    let r = ws.representation(rep)?;
    let rt = roundtrip_unitary(&x, &r)?;
    let result = json!({
        "first_dim": rt.first.dim(),
        "second_dim": rt.second.dim(),
        "unitary": intertwiner_to_json(&rt.unitary),
    });
    Ok(if rt.unitary.unitary {
        Response::ok(result, "round trip is unitarily equivalent to the original")
    } else {
        Response::failed(result, ctx.recheck(), "round-trip map is not unitary")
    })
}

fn context(ctx: &Context, bimodule: &str) -> Result<Response> {
    let x = Workspace::new(ctx.doc()?).bimodule(bimodule)?;
    let report = morita_context_check(&x)?;
    let mut result = json!({});
    if report.passed() {
        let phi = center_isomorphism(&x)?;
        result["center"] = json!({
            "center_b": vectors_to_json(&phi.basis_b),
            "center_a": vectors_to_json(&phi.basis_a),
            "map": matrix_to_json(&phi.map.matrix()),
        });
    }
    Ok(ctx.from_report(result, &report))
}

fn classical_limit(ctx: &Context, object: &str) -> Result<Response> {
    let doc = ctx.doc()?;
    let mut ws = Workspace::new(doc);
    let (kind, result) = if doc.modules.contains_key(object) {
        let (h0, map) = cl_prehilbert(&ws.module(object)?)?;
        (
            "module",
            json!({"gram": matrix_to_json(h0.gram()), "limit_map": quotient_to_json(&map.quotient)}),
        )
    } else if doc.representations.contains_key(object) {
        let (r0, map) = cl_representation(&ws.representation(object)?)?;
        (
            "representation",
            json!({"representation": representation_to_json(&r0), "limit_map": quotient_to_json(&map.quotient)}),
        )
    } else if doc.bimodules.contains_key(object) {
        let cl = cl_bimodule(&ws.bimodule(object)?)?;
        (
            "bimodule",
            json!({
                "bimodule": bimodule_to_json(&cl.bimodule),
                "limit_map": quotient_to_json(&cl.quotient),
                "radical_a": vectors_to_json(&cl.radical_a),
                "radical_b": cl.radical_b.as_ref().map(|r| vectors_to_json(r)),
                "radicals_agree": cl.radicals_agree,
            }),
        )
    } else if doc.matrices.contains_key(object) {
        ("matrix", json!({"matrix": matrix_to_json(&ws.matrix(object)?.classical_limit()?)}))
    } else if doc.algebras.contains_key(object) {
        let a0 = ws.algebra(object)?.classical_limit()?;
        ("algebra", json!({"dim": a0.dim(), "report": report_to_json(&a0.validate())}))
    } else {
        return Err(Error::UnresolvedReference {
            path: "classical-limit".into(),
            name: object.to_string(),
        });
    };
    let mut result = result;
    result["kind"] = json!(kind);
    Ok(Response::ok(result, format!("classical limit of {kind} {object}")))
}

fn naturality(ctx: &Context, bimodule: &str, rep: &str) -> Result<Response> {
    let mut ws = Workspace::new(ctx.doc()?);
    let x = ws.bimodule(bimodule)?;
    let r = ws.representation(rep)?;
    let nat = naturality_check(&x, &r)?;
    let result = json!({
        "deformed_dim": nat.deformed.dim(),
        "limit_of_induced_dim": nat.limit_of_induced.dim(),
        "induced_from_limit_dim": nat.induced_from_limit.dim(),
        "unitary": intertwiner_to_json(&nat.unitary),
    });
    Ok(if nat.unitary.unitary {
        Response::ok(result, "induction commutes with the classical limit")
    } else {
        Response::failed(result, ctx.recheck(), "limit comparison map is not unitary")
    })
}
