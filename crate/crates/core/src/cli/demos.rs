//! Built-in example families.

use std::sync::Arc;

use serde_json::{json, Value};

use super::commands::Context;
use super::json::*;
use super::report::*;
use crate::algebra::{density_functional, grassmann, matrix_algebra, nilpotent_normal_scan, scalars, StarAlgebra};
use crate::bimodule::{
    corner_bimodule, finite_rank_algebra, free_module_bimodule, Bimodule, Level, ValidationOptions,
};
use crate::classical::{deformed_homomorphism_bimodule, naturality_check, rotation_conjugation};
use crate::error::{Error, Result};
use crate::linalg::{forced_zero_entries, is_zero_vector, Matrix};
use crate::prehilbert::{defining_representation, direct_sum, gns, intertwiners, InnerProductModule, Representation};
use crate::report::Report;
use crate::rieffel::{center_isomorphism, gns_via_induction_compare, morita_context_check, roundtrip_unitary};
use crate::rings::FracScalar;

/// Demo names with their default and maximal `--n`.
pub const DEMOS: &[(&str, Option<(usize, usize)>)] = &[
    ("cn-mn", Some((3, 6))),
    ("matrix-morita", Some((2, 3))),
    ("gns-matrix", Some((2, 4))),
    ("corner", Some((3, 4))),
    ("grassmann-refusal", Some((2, 4))),
    ("roundtrip", Some((2, 4))),
    ("classical-naturality", None),
    ("deformed-homomorphism", None),
];

fn size(name: &str, n: Option<usize>) -> Result<usize> {
    let Some((_, range)) = DEMOS.iter().find(|(d, _)| *d == name) else {
        let names: Vec<&str> = DEMOS.iter().map(|(d, _)| *d).collect();
        return Err(Error::BadParams(format!("unknown demo {name:?}; available: {}", names.join(", "))));
    };
    match (range, n) {
        (None, None) => Ok(0),
        (None, Some(_)) => Err(Error::BadParams(format!("demo {name} takes no --n"))),
        (Some((default, _)), None) => Ok(*default),
        (Some((_, max)), Some(n)) if (1..=*max).contains(&n) => Ok(n),
        (Some((_, max)), Some(n)) => Err(Error::BadParams(format!("demo {name} needs 1 ≤ n ≤ {max}, got {n}"))),
    }
}

pub(crate) fn run_demo(ctx: &Context, name: &str, n: Option<usize>) -> Result<Response> {
    let n = size(name, n)?;
    match name {
        "cn-mn" => equivalence_demo(ctx, free_module_bimodule(Arc::new(scalars()), n, None)?, n),
        "matrix-morita" => equivalence_demo(ctx, free_module_bimodule(Arc::new(matrix_algebra(2)?), n, None)?, n),
        "gns-matrix" => gns_matrix(ctx, n),
        "corner" => corner(ctx, n),
        "grassmann-refusal" => grassmann_refusal(n),
        "roundtrip" => roundtrip(ctx, n),
        "classical-naturality" => classical_naturality(ctx),
        _ => deformed_homomorphism(ctx),
    }
}

fn push_bool(report: &mut Report, name: &str, ok: bool, detail: &str) {
    report.push(name, if ok { Ok(()) } else { Err(detail.to_string()) });
}

/// Equivalence validation, `𝒦(X_A) ≅ B`, Morita context and centers.
fn equivalence_demo(ctx: &Context, x: Bimodule, n: usize) -> Result<Response> {
    let mut report = x.validate(&ValidationOptions::level(Level::Equivalence));
    let k = finite_rank_algebra(&x)?;
    push_bool(&mut report, "finite_rank_isomorphic_to_B", k.left_is_isomorphism(), "L_B is not an isomorphism onto 𝒦(X_A)");
    report.extend(morita_context_check(&x)?);
    let mut result = json!({"n": n, "dim": x.dim, "dim_A": x.a.dim(), "dim_B": x.b.dim(), "dim_K": k.algebra.dim()});
    if report.passed() {
        let phi = center_isomorphism(&x)?;
        result["center_map"] = matrix_to_json(&phi.map.matrix());
    }
    Ok(ctx.from_report(result, &report))
}

fn rank_projection(n: usize, k: usize) -> Matrix {
    Matrix::diag(&(0..n).map(|i| if i < k { FracScalar::one() } else { FracScalar::zero() }).collect::<Vec<_>>())
}

/// `dim H_ω = n·rank ϱ`, a unitary onto copies of the defining
/// representation, and GNS as Rieffel induction.
fn gns_matrix(ctx: &Context, n: usize) -> Result<Response> {
    let alg = Arc::new(matrix_algebra(n)?);
    let def = defining_representation(alg.clone())?;
    let mut report = Report::new();
    let mut rows = Vec::new();
    for k in 1..=n {
        let omega = density_functional(&alg, &rank_projection(n, k))?;
        let g = gns(alg.clone(), &omega)?;
        push_bool(
            &mut report,
            &format!("rank_{k}_dimension"),
            g.representation.dim() == n * k,
            &format!("dim H_ω = {} ≠ {}", g.representation.dim(), n * k),
        );
        let copies: Vec<&Representation> = vec![&def; k];
        let sum = direct_sum(&copies)?;
        let space = intertwiners(&g.representation, &sum, ctx.seed)?;
        push_bool(
            &mut report,
            &format!("rank_{k}_unitary_to_defining_copies"),
            space.unitary.found().is_some(),
            "no unitary found",
        );
        let cmp = gns_via_induction_compare(alg.clone(), &omega)?;
        push_bool(
            &mut report,
            &format!("rank_{k}_gns_is_induced"),
            cmp.unitary.unitary && cmp.kernels_agree,
            "induced representation differs from GNS",
        );
        rows.push(json!({
            "rank": k,
            "dim": g.representation.dim(),
            "unitary": space.unitary.found().map(|u| matrix_to_json(&u.matrix)),
        }));
    }
    Ok(ctx.from_report(json!({"n": n, "functionals": rows}), &report))
}

/// `Q = diag(1,…,1,0)` in `M_L(ℂ)`; certifies `M_{L-1} ↔ M_L`.
fn corner(ctx: &Context, l: usize) -> Result<Response> {
    if l < 2 {
        return Err(Error::BadParams("corner needs L ≥ 2".into()));
    }
    let q = crate::algebra::builtin::matrix_element(&rank_projection(l, l - 1));
    let c = corner_bimodule(Arc::new(scalars()), l, &q)?;
    let mut report = c.bimodule.validate(&ValidationOptions::level(Level::Equivalence));
    push_bool(
        &mut report,
        "corner_is_matrix_algebra",
        c.corner.same_structure(&matrix_algebra(l - 1)?),
        "corner algebra is not M_{L-1}",
    );
    let result = json!({
        "L": l,
        "dim": c.bimodule.dim,
        "dim_corner": c.corner.dim(),
        "fullness_rank": c.fullness_rank,
        "cyclic_seed": c.cyclic_seed.as_ref().map(|v| vector_to_json(v)),
    });
    Ok(ctx.from_report(result, &report))
}

/// Pairs `(i, j)` with `ω(e_i* e_j) = 0` for every positive `ω`, and the basis
/// elements they force into every kernel.
fn killed_monomials(alg: &StarAlgebra) -> Result<Vec<usize>> {
    let n = alg.dim();
    let diag: Vec<FracScalar> = (0..n)
        .map(|i| {
            let sq = alg.mul(&alg.star(&alg.basis(i)), &alg.basis(i));
            if is_zero_vector(&sq) {
                FracScalar::zero()
            } else {
                FracScalar::one()
            }
        })
        .collect();
    let forced = forced_zero_entries(&Matrix::diag(&diag))?;
    let mut killed = std::collections::BTreeSet::new();
    for (i, j) in forced {
        let prod = alg.mul(&alg.star(&alg.basis(i)), &alg.basis(j));
        let support: Vec<usize> = (0..n).filter(|&k| !prod[k].is_zero()).collect();
        if let [k] = support[..] {
            killed.insert(k);
        }
    }
    Ok(killed.into_iter().collect())
}

fn grassmann_refusal(n: usize) -> Result<Response> {
    let alg = grassmann(n)?;
    let killed = killed_monomials(&alg)?;
    let labels = alg.labels();
    let result = json!({
        "n": n,
        "dim": alg.dim(),
        "killed_by_every_positive_functional": killed.iter().map(|&k| labels[k].clone()).collect::<Vec<_>>(),
    });
    match nilpotent_normal_scan(&alg) {
        Some(cert) => {
            let certificate = json!({
                "kind": "nilpotent",
                "document": {"algebras": {"G": {"kind": "grassmann", "n": n}}},
                "algebra": "G",
                "element": vector_to_json(&cert.element),
                "exponent": cert.exponent,
            });
            Ok(Response::failed(
                result,
                certificate,
                format!(
                    "{} is normal with {}^{} = 0; no equivalence bimodule with ℂ exists",
                    cert.description, cert.description, cert.exponent
                ),
            ))
        }
        None => Ok(Response::ok(result, "no nilpotent normal element found among the candidates")),
    }
}

fn roundtrip(ctx: &Context, n: usize) -> Result<Response> {
    let mut report = Report::new();
    let c = Arc::new(scalars());
    let m2 = Arc::new(matrix_algebra(2)?);
    let cases = [
        ("scalars", free_module_bimodule(c.clone(), n, None)?, defining_representation(c)?),
        ("matrix2", free_module_bimodule(m2.clone(), n, None)?, defining_representation(m2)?),
    ];
    let mut rows = Vec::new();
    for (label, x, rep) in &cases {
        let rt = roundtrip_unitary(x, rep)?;
        push_bool(&mut report, &format!("{label}_roundtrip_unitary"), rt.unitary.unitary, "not unitary");
        rows.push(json!({"case": label, "first_dim": rt.first.dim(), "second_dim": rt.second.dim()}));
    }
    Ok(ctx.from_report(json!({"n": n, "cases": rows}), &report))
}

fn scalar_rep(gram: Matrix) -> Result<Representation> {
    let n = gram.rows();
    Representation::new(Arc::new(scalars()), InnerProductModule::new(gram)?, vec![Matrix::identity(n)])
}

fn classical_naturality(ctx: &Context) -> Result<Response> {
    let lam = FracScalar::lambda();
    let one = FracScalar::one();
    let x = free_module_bimodule(Arc::new(scalars()), 2, None)?;
    let cases = [
        ("diag(1,1+λ)", Matrix::diag(&[one.clone(), &one + &lam])),
        ("diag(1,λ)", Matrix::diag(&[one.clone(), lam.clone()])),
        ("diag(λ²,1)", Matrix::diag(&[&lam * &lam, one.clone()])),
    ];
    let mut report = Report::new();
    let mut rows = Vec::new();
    for (label, g) in cases {
        let nat = naturality_check(&x, &scalar_rep(g)?)?;
        push_bool(&mut report, &format!("gram {label}"), nat.unitary.unitary, "not unitary");
        rows.push(json!({"case": label, "limit_dim": nat.limit_of_induced.dim()}));
    }
    Ok(ctx.from_report(json!({"cases": rows}), &report))
}

fn deformed_homomorphism(ctx: &Context) -> Result<Response> {
    let (m2, images) = rotation_conjugation()?;
    let cmp = deformed_homomorphism_bimodule(m2.clone(), m2.clone(), images.clone())?;
    let mut report = Report::new();
    report.push("limit_is_classical_homomorphism_bimodule", cmp.isomorphic.clone());
    report.extend(cmp.limit.bimodule.validate(&ValidationOptions::level(Level::Equivalence)));
    let nat = naturality_check(&cmp.bimodule, &defining_representation(m2)?)?;
    push_bool(&mut report, "naturality_unitary", nat.unitary.unitary, "not unitary");
    let result: Value = json!({
        "images": vectors_to_json(&images),
        "limit_dim": cmp.limit.bimodule.dim,
    });
    Ok(ctx.from_report(result, &report))
}
