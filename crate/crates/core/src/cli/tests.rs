use serde_json::{json, Value};

use super::*;
use crate::linalg::Matrix;
use crate::rings::FracScalar;

fn run_args(args: &[&str]) -> (Outcome, Value) {
    let out = run(std::iter::once("starmorita").chain(args.iter().copied()));
    let v = serde_json::from_str(&out.stdout).unwrap_or(Value::Null);
    (out, v)
}

const MINIMAL: &str = r#"{"algebras": {"M": {"kind": "matrix", "n": 2}}}"#;

#[test]
fn minimal_document_parses() {
    let doc = parse_document(MINIMAL).unwrap();
    assert_eq!(doc.algebras.len(), 1);
    assert_eq!(doc.base, Base::Rational);
}

#[test]
fn zero_denominator_is_malformed() {
    let text = r#"{"matrices": {"m": [["1/0"]]}}"#;
    match parse_document(text) {
        Err(Error::MalformedScalar { path, .. }) => assert_eq!(path, "$.matrices.m[0][0]"),
        other => panic!("{other:?}"),
    }
}

#[test]
fn dangling_reference_is_unresolved() {
    let text = r#"{"algebras": {"C": {"kind": "scalars"}},
                   "bimodules": {"X": {"kind": "free", "algebra": "D", "n": 2}}}"#;
    match parse_document(text) {
        Err(Error::UnresolvedReference { name, path }) => {
            assert_eq!(name, "D");
            assert_eq!(path, "$.bimodules.X.algebra");
        }
        other => panic!("{other:?}"),
    }
}

#[test]
fn syntax_errors_carry_positions() {
    match parse_document("{\n  \"algebras\": [}") {
        Err(Error::SyntaxError { path, .. }) => assert!(path.starts_with("line 2"), "{path}"),
        other => panic!("{other:?}"),
    }
    match parse_document(r#"{"algebras": {"M": {"kind": "matrix"}}}"#) {
        Err(Error::SyntaxError { path, .. }) => assert_eq!(path, "$.algebras.M"),
        other => panic!("{other:?}"),
    }
}

#[test]
fn lambda_needs_deformation_base() {
    let text = r#"{"matrices": {"m": [[["0", "1"]]]}}"#;
    assert!(matches!(parse_document(text), Err(Error::MalformedScalar { .. })));
    let deformed = r#"{"ring": {"base": "deformation"}, "matrices": {"m": [[["0", "1"]]]}}"#;
    let doc = parse_document(deformed).unwrap();
    assert_eq!(doc.matrices["m"], Matrix::diag(&[FracScalar::lambda()]));
    let pole = r#"{"ring": {"base": "deformation"}, "matrices": {"m": [[{"num": "1", "den": ["0", "1"]}]]}}"#;
    assert!(matches!(parse_document(pole), Err(Error::MalformedScalar { .. })));
}

#[test]
fn serialization_round_trips() {
    let text = r#"{
      "ring": {"base": "deformation"},
      "algebras": {"C": {"kind": "scalars"}, "M": {"kind": "matrix", "n": 2}, "G": {"kind": "grassmann", "n": 1},
                   "T": {"kind": "tensor", "of": ["M", "G"]}, "S": {"kind": "direct_sum", "of": ["C", "C"]}},
      "functionals": {"tr": {"algebra": "M", "density": [["1", "0"], ["0", {"re": "0", "im": "0"}]]},
                      "v": {"algebra": "C", "values": ["1/2"]}},
      "modules": {"H": {"gram": [["1", "0"], ["0", ["1", "1"]]]}},
      "representations": {"def": {"kind": "defining", "algebra": "M"},
                          "g": {"kind": "gns", "algebra": "M", "functional": "tr"},
                          "h": {"algebra": "C", "module": "H", "ops": [[["1", "0"], ["0", "1"]]]}},
      "bimodules": {"X": {"kind": "free", "algebra": "C", "n": 2},
                    "Xb": {"kind": "conjugate", "of": "X"},
                    "Y": {"kind": "explicit", "algB": "C", "algA": "C", "dim": 1,
                          "left": [[["1"]]], "right": [[["1"]]], "innerA": [[["1"]]], "innerB": [[["1"]]],
                          "cyclic": {"p": [{"span": [["1"]], "cyclic": [["1"]]}]}}},
      "matrices": {"m": [[{"num": {"re": "1", "im": "2"}, "den": ["1", "1"]}]]}
    }"#;
    let doc = parse_document(text).unwrap();
    let again = parse_document(&doc.to_text()).unwrap();
    assert_eq!(doc, again);
    assert_eq!(doc.to_text(), again.to_text());
}

#[test]
fn cn_mn_demo_passes() {
    let (out, v) = run_args(&["demo", "cn-mn", "--n", "3"]);
    assert_eq!(out.exit_code, 0, "{}", out.stdout);
    assert_eq!(v["status"], "ok");
    assert_eq!(v["result"]["dim"], 3);
}

#[test]
fn psd_refutes_swap_with_witness() {
    let (out, v) = run_args(&["psd", r#"[["0","1"],["1","0"]]"#]);
    assert_eq!(out.exit_code, 1);
    let w: Vec<FracScalar> = json::vector_from_json(&v["certificate"]["witness"], "$").unwrap();
    assert_eq!(w.len(), 2);
    assert!(!w[0].is_zero());
    assert_eq!(w[1], -&w[0]);
    let replay = check_certificate(&v).unwrap();
    assert_eq!(replay.status, Status::Ok);
    let (out, _) = run_args(&["psd", r#"[["2","1"],["1","2"]]"#]);
    assert_eq!(out.exit_code, 0);
    let (out, _) = run_args(&["psd", r#"[["0","1"],["2","0"]]"#]);
    assert_eq!(out.exit_code, 2);
}

#[test]
fn grassmann_refusal_certifies_nilpotent_generator() {
    let (out, v) = run_args(&["demo", "grassmann-refusal", "--n", "2"]);
    assert_eq!(out.exit_code, 1);
    let cert = &v["certificate"];
    assert_eq!(cert["kind"], "nilpotent");
    let h: Vec<FracScalar> = json::vector_from_json(&cert["element"], "$").unwrap();
    assert_eq!(h, crate::linalg::basis_vector(4, 1));
    assert_eq!(check_certificate(cert).unwrap().status, Status::Ok);
    let mut forged = cert.clone();
    forged["element"] = json!(["1", "0", "0", "0"]);
    assert_eq!(check_certificate(&forged).unwrap().status, Status::Failed);
}

#[test]
fn every_demo_runs() {
    for (name, _) in DEMOS {
        let (out, v) = run_args(&["demo", name]);
        let expected = if *name == "grassmann-refusal" { 1 } else { 0 };
        assert_eq!(out.exit_code, expected, "{name}: {}", out.stdout);
        assert_eq!(v["command"], "demo");
    }
    assert_eq!(run_args(&["demo", "nope"]).0.exit_code, 2);
    assert_eq!(run_args(&["demo", "cn-mn", "--n", "99"]).0.exit_code, 2);
}

#[test]
fn unknown_command_is_input_error() {
    let (out, v) = run_args(&["frobnicate"]);
    assert_eq!(out.exit_code, 2);
    assert_eq!(v["status"], "input_error");
}

#[test]
fn reports_are_deterministic() {
    let a = run_args(&["demo", "gns-matrix", "--n", "2", "--seed", "7"]).0;
    let b = run_args(&["demo", "gns-matrix", "--n", "2", "--seed", "7"]).0;
    assert_eq!(a, b);
    assert_eq!(a.exit_code, 0, "{}", a.stdout);
}

const FREE_DOC: &str = r#"{
  "algebras": {"C": {"kind": "scalars"}, "M": {"kind": "matrix", "n": 2}},
  "functionals": {"w": {"algebra": "M", "density": [["1", "0"], ["0", "0"]]},
                  "bad": {"algebra": "M", "density": [["1", "0"], ["0", "-1"]]}},
  "representations": {"c": {"kind": "defining", "algebra": "C"},
                      "def": {"kind": "defining", "algebra": "M"}},
  "bimodules": {"X": {"kind": "free", "algebra": "C", "n": 2},
                "Neg": {"kind": "explicit", "algB": "C", "algA": "C", "dim": 1,
                        "left": [[["1"]]], "right": [[["1"]]], "innerA": [[["-1"]]]}},
  "matrices": {"swap": [["0", "1"], ["1", "0"]]}
}"#;

fn with_doc(args: &[&str]) -> Response {
    let doc = parse_document(FREE_DOC).unwrap();
    let command = Command::from_args(args[0], &args[1..].iter().map(|s| s.to_string()).collect::<Vec<_>>()).unwrap();
    run_command(Some(&doc), &command, 0)
}

#[test]
fn document_commands() {
    assert_eq!(with_doc(&["validate"]).status, Status::Ok);
    let r = with_doc(&["gns", "M", "w"]);
    assert_eq!(r.status, Status::Ok);
    assert_eq!(r.result["dim"], 2);
    let r = with_doc(&["gns", "M", "bad"]);
    assert_eq!(r.status, Status::Failed);
    assert_eq!(check_certificate(r.certificate.as_ref().unwrap()).unwrap().status, Status::Ok);
    let r = with_doc(&["induce", "X", "c"]);
    assert_eq!(r.result["dim"], 2);
    let r = with_doc(&["induce", "Neg", "c"]);
    assert_eq!(r.status, Status::Failed);
    assert_eq!(check_certificate(r.certificate.as_ref().unwrap()).unwrap().status, Status::Ok);
    assert_eq!(with_doc(&["verify-bimodule", "X"]).status, Status::Ok);
    let r = with_doc(&["verify-bimodule", "Neg", "--level", "rigged"]);
    assert_eq!(r.status, Status::Failed);
    assert_eq!(check_certificate(r.certificate.as_ref().unwrap()).unwrap().status, Status::Ok);
    assert_eq!(with_doc(&["roundtrip", "X", "c"]).status, Status::Ok);
    assert_eq!(with_doc(&["context", "X"]).status, Status::Ok);
    assert_eq!(with_doc(&["naturality", "X", "c"]).status, Status::Ok);
    assert_eq!(with_doc(&["classical-limit", "X"]).status, Status::Ok);
    assert_eq!(with_doc(&["psd", "swap"]).status, Status::Failed);
    assert_eq!(with_doc(&["psd", "missing"]).status, Status::InputError);
    assert_eq!(with_doc(&["induce", "X", "def"]).status, Status::InputError);
}

#[test]
fn missing_document_is_input_error() {
    let (out, _) = run_args(&["validate"]);
    assert_eq!(out.exit_code, 2);
    let (out, _) = run_args(&["--doc", "/nonexistent/doc.json", "validate"]);
    assert_eq!(out.exit_code, 2);
}
