//! Input documents: named algebras, functionals, modules, representations,
//! bimodules and matrices, all with exact scalars.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde_json::{json, Map, Value};

use super::json::*;
use crate::algebra::{
    density_functional, direct_sum, grassmann, matrix_algebra, scalars, tensor_product, LinearFunctional,
    StarAlgebra, StarHomomorphism,
};
use crate::bimodule::{
    conjugate, corner_bimodule, free_module_bimodule, homomorphism_bimodule, tensor_bimodules, Bimodule,
    CyclicStructure, CyclicSubmodule, InnerTensor,
};
use crate::error::{Error, Result};
use crate::linalg::{Matrix, Vector};
use crate::prehilbert::{defining_representation, gns, InnerProductModule, Representation};
use crate::report::Report;
use crate::rings::FracScalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Base {
    Rational,
    Deformation,
}

#[derive(Clone, Debug, PartialEq)]
pub enum AlgebraDecl {
    Scalars,
    Matrix(usize),
    Grassmann(usize),
    Tensor(String, String),
    DirectSum(String, String),
    Structure {
        mul: Vec<Vec<Vector>>,
        star: Vec<Vector>,
        labels: Option<Vec<String>>,
    },
}

#[derive(Clone, Debug, PartialEq)]
pub enum FunctionalDecl {
    Values { algebra: String, values: Vector },
    Density { algebra: String, density: Matrix },
}

#[derive(Clone, Debug, PartialEq)]
pub enum RepresentationDecl {
    Defining { algebra: String },
    Gns { algebra: String, functional: String },
    Explicit { algebra: String, gram: GramRef, ops: Vec<Matrix> },
}

#[derive(Clone, Debug, PartialEq)]
pub enum GramRef {
    Module(String),
    Inline(Matrix),
}

#[derive(Clone, Debug, PartialEq)]
pub enum BimoduleDecl {
    Free {
        algebra: String,
        n: usize,
    },
    Homomorphism {
        source: String,
        target: String,
        images: Vec<Vector>,
    },
    Corner {
        algebra: String,
        size: usize,
        projection: Vector,
    },
    Conjugate {
        of: String,
    },
    Tensor {
        left: String,
        right: String,
    },
    Explicit {
        left_algebra: String,
        right_algebra: String,
        left: Vec<Matrix>,
        right: Vec<Matrix>,
        inner_a: InnerTensor,
        inner_b: Option<InnerTensor>,
        cyclic_p: Option<Vec<CyclicSubmodule>>,
        cyclic_q: Option<Vec<CyclicSubmodule>>,
    },
}

#[derive(Clone, Debug, PartialEq)]
pub struct Document {
    pub base: Base,
    pub algebras: BTreeMap<String, AlgebraDecl>,
    pub functionals: BTreeMap<String, FunctionalDecl>,
    pub modules: BTreeMap<String, Matrix>,
    pub representations: BTreeMap<String, RepresentationDecl>,
    pub bimodules: BTreeMap<String, BimoduleDecl>,
    pub matrices: BTreeMap<String, Matrix>,
}

impl Default for Document {
    fn default() -> Self {
        Document {
            base: Base::Rational,
            algebras: BTreeMap::new(),
            functionals: BTreeMap::new(),
            modules: BTreeMap::new(),
            representations: BTreeMap::new(),
            bimodules: BTreeMap::new(),
            matrices: BTreeMap::new(),
        }
    }
}

fn section<'a>(root: &'a Map<String, Value>, key: &str) -> Result<Vec<(&'a String, &'a Value, String)>> {
    match root.get(key) {
        None => Ok(Vec::new()),
        Some(v) => Ok(object(v, &format!("$.{key}"))?
            .iter()
            .map(|(name, v)| (name, v, format!("$.{key}.{name}")))
            .collect()),
    }
}

fn kind_of(obj: &Map<String, Value>, path: &str) -> Result<String> {
    string(field(obj, "kind", path)?, &format!("{path}.kind"))
}

fn name_field(obj: &Map<String, Value>, key: &str, path: &str) -> Result<String> {
    string(field(obj, key, path)?, &format!("{path}.{key}"))
}

fn parse_algebra(v: &Value, path: &str) -> Result<AlgebraDecl> {
    let obj = object(v, path)?;
    let kind = kind_of(obj, path)?;
    let n = || usize_of(field(obj, "n", path)?, &format!("{path}.n"));
    let pair = || -> Result<(String, String)> {
        let of = array(field(obj, "of", path)?, &format!("{path}.of"))?;
        if of.len() != 2 {
            return Err(syntax(&format!("{path}.of"), "expected two algebra names"));
        }
        Ok((string(&of[0], &format!("{path}.of[0]"))?, string(&of[1], &format!("{path}.of[1]"))?))
    };
    Ok(match kind.as_str() {
        "scalars" => AlgebraDecl::Scalars,
        "matrix" => AlgebraDecl::Matrix(n()?),
        "grassmann" => AlgebraDecl::Grassmann(n()?),
        "tensor" => {
            let (a, b) = pair()?;
            AlgebraDecl::Tensor(a, b)
        }
        "direct_sum" => {
            let (a, b) = pair()?;
            AlgebraDecl::DirectSum(a, b)
        }
        "structure" => AlgebraDecl::Structure {
            mul: tensor_from_json(field(obj, "mul", path)?, &format!("{path}.mul"))?,
            star: vectors_from_json(field(obj, "star", path)?, &format!("{path}.star"))?,
            labels: obj
                .get("labels")
                .map(|l| {
                    array(l, &format!("{path}.labels"))?
                        .iter()
                        .enumerate()
                        .map(|(k, s)| string(s, &format!("{path}.labels[{k}]")))
                        .collect::<Result<Vec<_>>>()
                })
                .transpose()?,
        },
        other => return Err(syntax(&format!("{path}.kind"), format!("unknown algebra kind {other:?}"))),
    })
}

fn algebra_to_json(a: &AlgebraDecl) -> Value {
    match a {
        AlgebraDecl::Scalars => json!({"kind": "scalars"}),
        AlgebraDecl::Matrix(n) => json!({"kind": "matrix", "n": n}),
        AlgebraDecl::Grassmann(n) => json!({"kind": "grassmann", "n": n}),
        AlgebraDecl::Tensor(x, y) => json!({"kind": "tensor", "of": [x, y]}),
        AlgebraDecl::DirectSum(x, y) => json!({"kind": "direct_sum", "of": [x, y]}),
        AlgebraDecl::Structure { mul, star, labels } => {
            let mut v = json!({"kind": "structure", "mul": tensor_to_json(mul), "star": vectors_to_json(star)});
            if let Some(l) = labels {
                v["labels"] = json!(l);
            }
            v
        }
    }
}

fn parse_functional(v: &Value, path: &str) -> Result<FunctionalDecl> {
    let obj = object(v, path)?;
    let algebra = name_field(obj, "algebra", path)?;
    if let Some(values) = obj.get("values") {
        Ok(FunctionalDecl::Values {
            algebra,
            values: vector_from_json(values, &format!("{path}.values"))?,
        })
    } else if let Some(d) = obj.get("density") {
        Ok(FunctionalDecl::Density {
            algebra,
            density: matrix_from_json(d, &format!("{path}.density"))?,
        })
    } else {
        Err(syntax(path, "functional needs \"values\" or \"density\""))
    }
}

fn functional_to_json(f: &FunctionalDecl) -> Value {
    match f {
        FunctionalDecl::Values { algebra, values } => json!({"algebra": algebra, "values": vector_to_json(values)}),
        FunctionalDecl::Density { algebra, density } => {
            json!({"algebra": algebra, "density": matrix_to_json(density)})
        }
    }
}

fn parse_representation(v: &Value, path: &str) -> Result<RepresentationDecl> {
    let obj = object(v, path)?;
    let algebra = name_field(obj, "algebra", path)?;
    let kind = obj
        .get("kind")
        .map(|k| string(k, &format!("{path}.kind")))
        .transpose()?
        .unwrap_or_else(|| "explicit".into());
    Ok(match kind.as_str() {
        "defining" => RepresentationDecl::Defining { algebra },
        "gns" => RepresentationDecl::Gns {
            algebra,
            functional: name_field(obj, "functional", path)?,
        },
        "explicit" => {
            let gram = if let Some(m) = obj.get("module") {
                GramRef::Module(string(m, &format!("{path}.module"))?)
            } else {
                GramRef::Inline(matrix_from_json(field(obj, "gram", path)?, &format!("{path}.gram"))?)
            };
            RepresentationDecl::Explicit {
                algebra,
                gram,
                ops: matrices_from_json(field(obj, "ops", path)?, &format!("{path}.ops"))?,
            }
        }
        other => return Err(syntax(&format!("{path}.kind"), format!("unknown representation kind {other:?}"))),
    })
}

fn representation_to_json(r: &RepresentationDecl) -> Value {
    match r {
        RepresentationDecl::Defining { algebra } => json!({"kind": "defining", "algebra": algebra}),
        RepresentationDecl::Gns { algebra, functional } => {
            json!({"kind": "gns", "algebra": algebra, "functional": functional})
        }
        RepresentationDecl::Explicit { algebra, gram, ops } => {
            let mut v = json!({"kind": "explicit", "algebra": algebra, "ops": matrices_to_json(ops)});
            match gram {
                GramRef::Module(m) => v["module"] = json!(m),
                GramRef::Inline(g) => v["gram"] = matrix_to_json(g),
            }
            v
        }
    }
}

fn parse_cyclic(v: &Value, path: &str) -> Result<Vec<CyclicSubmodule>> {
    array(v, path)?
        .iter()
        .enumerate()
        .map(|(k, s)| {
            let p = format!("{path}[{k}]");
            let obj = object(s, &p)?;
            Ok(CyclicSubmodule {
                span: vectors_from_json(field(obj, "span", &p)?, &format!("{p}.span"))?,
                cyclic: vectors_from_json(field(obj, "cyclic", &p)?, &format!("{p}.cyclic"))?,
            })
        })
        .collect()
}

fn cyclic_to_json(c: &[CyclicSubmodule]) -> Value {
    Value::Array(
        c.iter()
            .map(|s| json!({"span": vectors_to_json(&s.span), "cyclic": vectors_to_json(&s.cyclic)}))
            .collect(),
    )
}

fn parse_bimodule(v: &Value, path: &str) -> Result<BimoduleDecl> {
    let obj = object(v, path)?;
    let kind = kind_of(obj, path)?;
    let name = |key: &str| name_field(obj, key, path);
    Ok(match kind.as_str() {
        "free" => BimoduleDecl::Free {
            algebra: name("algebra")?,
            n: usize_of(field(obj, "n", path)?, &format!("{path}.n"))?,
        },
        "homomorphism" => BimoduleDecl::Homomorphism {
            source: name("source")?,
            target: name("target")?,
            images: vectors_from_json(field(obj, "images", path)?, &format!("{path}.images"))?,
        },
        "corner" => BimoduleDecl::Corner {
            algebra: name("algebra")?,
            size: usize_of(field(obj, "size", path)?, &format!("{path}.size"))?,
            projection: vector_from_json(field(obj, "projection", path)?, &format!("{path}.projection"))?,
        },
        "conjugate" => BimoduleDecl::Conjugate { of: name("of")? },
        "tensor" => BimoduleDecl::Tensor {
            left: name("left")?,
            right: name("right")?,
        },
        "explicit" => {
            let left = matrices_from_json(field(obj, "left", path)?, &format!("{path}.left"))?;
            let dim = usize_of(field(obj, "dim", path)?, &format!("{path}.dim"))?;
            if left.iter().any(|m| m.rows() != dim || m.cols() != dim) {
                return Err(syntax(&format!("{path}.left"), format!("action matrices must be {dim}×{dim}")));
            }
            let cyclic = obj.get("cyclic").map(|c| object(c, &format!("{path}.cyclic"))).transpose()?;
            let side = |key: &str| -> Result<Option<Vec<CyclicSubmodule>>> {
                cyclic
                    .and_then(|c| c.get(key))
                    .map(|v| parse_cyclic(v, &format!("{path}.cyclic.{key}")))
                    .transpose()
            };
            BimoduleDecl::Explicit {
                left_algebra: name("algB")?,
                right_algebra: name("algA")?,
                left,
                right: matrices_from_json(field(obj, "right", path)?, &format!("{path}.right"))?,
                inner_a: tensor_from_json(field(obj, "innerA", path)?, &format!("{path}.innerA"))?,
                inner_b: obj
                    .get("innerB")
                    .map(|h| tensor_from_json(h, &format!("{path}.innerB")))
                    .transpose()?,
                cyclic_p: side("p")?,
                cyclic_q: side("q")?,
            }
        }
        other => return Err(syntax(&format!("{path}.kind"), format!("unknown bimodule kind {other:?}"))),
    })
}

fn bimodule_to_json(b: &BimoduleDecl) -> Value {
    match b {
        BimoduleDecl::Free { algebra, n } => json!({"kind": "free", "algebra": algebra, "n": n}),
        BimoduleDecl::Homomorphism { source, target, images } => json!({
            "kind": "homomorphism", "source": source, "target": target, "images": vectors_to_json(images)
        }),
        BimoduleDecl::Corner { algebra, size, projection } => json!({
            "kind": "corner", "algebra": algebra, "size": size, "projection": vector_to_json(projection)
        }),
        BimoduleDecl::Conjugate { of } => json!({"kind": "conjugate", "of": of}),
        BimoduleDecl::Tensor { left, right } => json!({"kind": "tensor", "left": left, "right": right}),
        BimoduleDecl::Explicit {
            left_algebra,
            right_algebra,
            left,
            right,
            inner_a,
            inner_b,
            cyclic_p,
            cyclic_q,
        } => {
            let dim = left.first().or(right.first()).map_or(inner_a.len(), |m| m.rows());
            let mut v = json!({
                "kind": "explicit",
                "algB": left_algebra,
                "algA": right_algebra,
                "dim": dim,
                "left": matrices_to_json(left),
                "right": matrices_to_json(right),
                "innerA": tensor_to_json(inner_a),
            });
            if let Some(h) = inner_b {
                v["innerB"] = tensor_to_json(h);
            }
            if cyclic_p.is_some() || cyclic_q.is_some() {
                let mut c = Map::new();
                if let Some(p) = cyclic_p {
                    c.insert("p".into(), cyclic_to_json(p));
                }
                if let Some(q) = cyclic_q {
                    c.insert("q".into(), cyclic_to_json(q));
                }
                v["cyclic"] = Value::Object(c);
            }
            v
        }
    }
}

type Visit<'a> = dyn FnMut(&str, &FracScalar) -> Result<()> + 'a;

fn visit_vector(v: &[FracScalar], path: &str, f: &mut Visit) -> Result<()> {
    for (k, z) in v.iter().enumerate() {
        f(&format!("{path}[{k}]"), z)?;
    }
    Ok(())
}

fn visit_vectors(vs: &[Vector], path: &str, f: &mut Visit) -> Result<()> {
    for (k, v) in vs.iter().enumerate() {
        visit_vector(v, &format!("{path}[{k}]"), f)?;
    }
    Ok(())
}

fn visit_matrix(m: &Matrix, path: &str, f: &mut Visit) -> Result<()> {
    for i in 0..m.rows() {
        visit_vector(m.row(i), &format!("{path}[{i}]"), f)?;
    }
    Ok(())
}

fn visit_matrices(ms: &[Matrix], path: &str, f: &mut Visit) -> Result<()> {
    for (k, m) in ms.iter().enumerate() {
        visit_matrix(m, &format!("{path}[{k}]"), f)?;
    }
    Ok(())
}

fn visit_tensor(h: &[Vec<Vector>], path: &str, f: &mut Visit) -> Result<()> {
    for (k, row) in h.iter().enumerate() {
        visit_vectors(row, &format!("{path}[{k}]"), f)?;
    }
    Ok(())
}

fn visit_cyclic(c: &[CyclicSubmodule], path: &str, f: &mut Visit) -> Result<()> {
    for (k, s) in c.iter().enumerate() {
        visit_vectors(&s.span, &format!("{path}[{k}].span"), f)?;
        visit_vectors(&s.cyclic, &format!("{path}[{k}].cyclic"), f)?;
    }
    Ok(())
}

pub fn parse_document(text: &str) -> Result<Document> {
    let value: Value = serde_json::from_str(text).map_err(|e| Error::SyntaxError {
        path: format!("line {} column {}", e.line(), e.column()),
        message: e.to_string(),
    })?;
    document_from_json(&value)
}

pub fn document_from_json(value: &Value) -> Result<Document> {
    let root = object(value, "$")?;
    for key in root.keys() {
        if !["ring", "algebras", "functionals", "modules", "representations", "bimodules", "matrices"]
            .contains(&key.as_str())
        {
            return Err(syntax("$", format!("unknown section {key:?}")));
        }
    }
    let base = match root.get("ring") {
        None => Base::Rational,
        Some(r) => {
            let obj = object(r, "$.ring")?;
            match string(field(obj, "base", "$.ring")?, "$.ring.base")?.as_str() {
                "rational" => Base::Rational,
                "deformation" => Base::Deformation,
                other => return Err(syntax("$.ring.base", format!("unknown base {other:?}"))),
            }
        }
    };
    let mut doc = Document {
        base,
        ..Document::default()
    };
    for (name, v, path) in section(root, "algebras")? {
        doc.algebras.insert(name.clone(), parse_algebra(v, &path)?);
    }
    for (name, v, path) in section(root, "functionals")? {
        doc.functionals.insert(name.clone(), parse_functional(v, &path)?);
    }
    for (name, v, path) in section(root, "modules")? {
        let obj = object(v, &path)?;
        doc.modules
            .insert(name.clone(), matrix_from_json(field(obj, "gram", &path)?, &format!("{path}.gram"))?);
    }
    for (name, v, path) in section(root, "representations")? {
        doc.representations.insert(name.clone(), parse_representation(v, &path)?);
    }
    for (name, v, path) in section(root, "bimodules")? {
        doc.bimodules.insert(name.clone(), parse_bimodule(v, &path)?);
    }
    for (name, v, path) in section(root, "matrices")? {
        doc.matrices.insert(name.clone(), matrix_from_json(v, &path)?);
    }
    doc.check_scalars()?;
    doc.check_references()?;
    Ok(doc)
}

impl Document {
    pub fn to_json(&self) -> Value {
        let map = |m: &BTreeMap<String, Value>| Value::Object(m.clone().into_iter().collect());
        let mut root = Map::new();
        root.insert(
            "ring".into(),
            json!({"base": match self.base { Base::Rational => "rational", Base::Deformation => "deformation" }}),
        );
        let algebras = self.algebras.iter().map(|(k, v)| (k.clone(), algebra_to_json(v))).collect();
        root.insert("algebras".into(), map(&algebras));
        let functionals = self.functionals.iter().map(|(k, v)| (k.clone(), functional_to_json(v))).collect();
        root.insert("functionals".into(), map(&functionals));
        let modules = self
            .modules
            .iter()
            .map(|(k, g)| (k.clone(), json!({"gram": matrix_to_json(g)})))
            .collect();
        root.insert("modules".into(), map(&modules));
        let reps = self
            .representations
            .iter()
            .map(|(k, v)| (k.clone(), representation_to_json(v)))
            .collect();
        root.insert("representations".into(), map(&reps));
        let bims = self.bimodules.iter().map(|(k, v)| (k.clone(), bimodule_to_json(v))).collect();
        root.insert("bimodules".into(), map(&bims));
        let mats = self.matrices.iter().map(|(k, m)| (k.clone(), matrix_to_json(m))).collect();
        root.insert("matrices".into(), map(&mats));
        Value::Object(root)
    }

    pub fn to_text(&self) -> String {
        serde_json::to_string_pretty(&self.to_json()).expect("serializable")
    }

    /// Calls `f` on every scalar with its field path.
    pub fn visit_scalars(&self, f: &mut Visit) -> Result<()> {
        for (n, a) in &self.algebras {
            if let AlgebraDecl::Structure { mul, star, .. } = a {
                visit_tensor(mul, &format!("$.algebras.{n}.mul"), f)?;
                visit_vectors(star, &format!("$.algebras.{n}.star"), f)?;
            }
        }
        for (n, d) in &self.functionals {
            match d {
                FunctionalDecl::Values { values, .. } => visit_vector(values, &format!("$.functionals.{n}.values"), f)?,
                FunctionalDecl::Density { density, .. } => {
                    visit_matrix(density, &format!("$.functionals.{n}.density"), f)?
                }
            }
        }
        for (n, g) in &self.modules {
            visit_matrix(g, &format!("$.modules.{n}.gram"), f)?;
        }
        for (n, r) in &self.representations {
            if let RepresentationDecl::Explicit { gram, ops, .. } = r {
                if let GramRef::Inline(g) = gram {
                    visit_matrix(g, &format!("$.representations.{n}.gram"), f)?;
                }
                visit_matrices(ops, &format!("$.representations.{n}.ops"), f)?;
            }
        }
        for (n, b) in &self.bimodules {
            let p = format!("$.bimodules.{n}");
            match b {
                BimoduleDecl::Homomorphism { images, .. } => visit_vectors(images, &format!("{p}.images"), f)?,
                BimoduleDecl::Corner { projection, .. } => visit_vector(projection, &format!("{p}.projection"), f)?,
                BimoduleDecl::Explicit {
                    left,
                    right,
                    inner_a,
                    inner_b,
                    cyclic_p,
                    cyclic_q,
                    ..
                } => {
                    visit_matrices(left, &format!("{p}.left"), f)?;
                    visit_matrices(right, &format!("{p}.right"), f)?;
                    visit_tensor(inner_a, &format!("{p}.innerA"), f)?;
                    if let Some(h) = inner_b {
                        visit_tensor(h, &format!("{p}.innerB"), f)?;
                    }
                    if let Some(c) = cyclic_p {
                        visit_cyclic(c, &format!("{p}.cyclic.p"), f)?;
                    }
                    if let Some(c) = cyclic_q {
                        visit_cyclic(c, &format!("{p}.cyclic.q"), f)?;
                    }
                }
                _ => {}
            }
        }
        for (n, m) in &self.matrices {
            visit_matrix(m, &format!("$.matrices.{n}"), f)?;
        }
        Ok(())
    }

    /// Rational documents must be λ-free; deformed documents need
    /// denominators that do not vanish at `λ = 0`.
    fn check_scalars(&self) -> Result<()> {
        let base = self.base;
        self.visit_scalars(&mut |path, z| {
            let bad = match base {
                Base::Rational if !z.is_rational() => Some("λ is not allowed in a rational document"),
                Base::Deformation if !z.is_regular_at_zero() => Some("denominator vanishes at λ = 0"),
                _ => None,
            };
            match bad {
                Some(message) => Err(Error::MalformedScalar {
                    path: path.to_string(),
                    message: message.into(),
                }),
                None => Ok(()),
            }
        })
    }

    fn check_references(&self) -> Result<()> {
        let missing = |path: String, name: &str| Error::UnresolvedReference {
            path,
            name: name.to_string(),
        };
        let alg = |path: String, name: &str| {
            if self.algebras.contains_key(name) {
                Ok(())
            } else {
                Err(missing(path, name))
            }
        };
        for (n, a) in &self.algebras {
            if let AlgebraDecl::Tensor(x, y) | AlgebraDecl::DirectSum(x, y) = a {
                alg(format!("$.algebras.{n}.of"), x)?;
                alg(format!("$.algebras.{n}.of"), y)?;
            }
        }
        for (n, f) in &self.functionals {
            let (FunctionalDecl::Values { algebra, .. } | FunctionalDecl::Density { algebra, .. }) = f;
            alg(format!("$.functionals.{n}.algebra"), algebra)?;
        }
        for (n, r) in &self.representations {
            let p = format!("$.representations.{n}");
            match r {
                RepresentationDecl::Defining { algebra } => alg(format!("{p}.algebra"), algebra)?,
                RepresentationDecl::Gns { algebra, functional } => {
                    alg(format!("{p}.algebra"), algebra)?;
                    if !self.functionals.contains_key(functional) {
                        return Err(missing(format!("{p}.functional"), functional));
                    }
                }
                RepresentationDecl::Explicit { algebra, gram, .. } => {
                    alg(format!("{p}.algebra"), algebra)?;
                    if let GramRef::Module(m) = gram {
                        if !self.modules.contains_key(m) {
                            return Err(missing(format!("{p}.module"), m));
                        }
                    }
                }
            }
        }
        for (n, b) in &self.bimodules {
            let p = format!("$.bimodules.{n}");
            let bim = |key: &str, name: &str| {
                if self.bimodules.contains_key(name) {
                    Ok(())
                } else {
                    Err(missing(format!("{p}.{key}"), name))
                }
            };
            match b {
                BimoduleDecl::Free { algebra, .. } | BimoduleDecl::Corner { algebra, .. } => {
                    alg(format!("{p}.algebra"), algebra)?
                }
                BimoduleDecl::Homomorphism { source, target, .. } => {
                    alg(format!("{p}.source"), source)?;
                    alg(format!("{p}.target"), target)?;
                }
                BimoduleDecl::Conjugate { of } => bim("of", of)?,
                BimoduleDecl::Tensor { left, right } => {
                    bim("left", left)?;
                    bim("right", right)?;
                }
                BimoduleDecl::Explicit {
                    left_algebra,
                    right_algebra,
                    ..
                } => {
                    alg(format!("{p}.algB"), left_algebra)?;
                    alg(format!("{p}.algA"), right_algebra)?;
                }
            }
        }
        Ok(())
    }
}

/// Built objects, constructed lazily by name and cached.
pub struct Workspace<'d> {
    pub doc: &'d Document,
    algebras: BTreeMap<String, Arc<StarAlgebra>>,
    bimodules: BTreeMap<String, Bimodule>,
}

impl<'d> Workspace<'d> {
    pub fn new(doc: &'d Document) -> Self {
        Workspace {
            doc,
            algebras: BTreeMap::new(),
            bimodules: BTreeMap::new(),
        }
    }

    fn unresolved(kind: &str, name: &str) -> Error {
        Error::UnresolvedReference {
            path: format!("$.{kind}"),
            name: name.to_string(),
        }
    }

    pub fn algebra(&mut self, name: &str) -> Result<Arc<StarAlgebra>> {
        self.algebra_depth(name, 0)
    }

    fn algebra_depth(&mut self, name: &str, depth: usize) -> Result<Arc<StarAlgebra>> {
        if let Some(a) = self.algebras.get(name) {
            return Ok(a.clone());
        }
        if depth > 32 {
            return Err(Error::BadParams(format!("algebra {name} is defined in terms of itself")));
        }
        let decl = self
            .doc
            .algebras
            .get(name)
            .ok_or_else(|| Self::unresolved("algebras", name))?
            .clone();
        let built = match decl {
            AlgebraDecl::Scalars => scalars(),
            AlgebraDecl::Matrix(n) => matrix_algebra(n)?,
            AlgebraDecl::Grassmann(n) => grassmann(n)?,
            AlgebraDecl::Tensor(x, y) => {
                let (x, y) = (self.algebra_depth(&x, depth + 1)?, self.algebra_depth(&y, depth + 1)?);
                tensor_product(&x, &y)
            }
            AlgebraDecl::DirectSum(x, y) => {
                let (x, y) = (self.algebra_depth(&x, depth + 1)?, self.algebra_depth(&y, depth + 1)?);
                direct_sum(&x, &y)
            }
            AlgebraDecl::Structure { mul, star, labels } => {
                let a = StarAlgebra::new(mul, star)?;
                match labels {
                    Some(l) if l.len() == a.dim() => a.with_labels(l),
                    Some(_) => return Err(Error::ShapeMismatch(format!("labels of algebra {name}"))),
                    None => a,
                }
            }
        };
        let built = Arc::new(built);
        self.algebras.insert(name.to_string(), built.clone());
        Ok(built)
    }

    pub fn functional(&mut self, name: &str) -> Result<(Arc<StarAlgebra>, LinearFunctional)> {
        let decl = self
            .doc
            .functionals
            .get(name)
            .ok_or_else(|| Self::unresolved("functionals", name))?
            .clone();
        match decl {
            FunctionalDecl::Values { algebra, values } => {
                let a = self.algebra(&algebra)?;
                if values.len() != a.dim() {
                    return Err(Error::ShapeMismatch(format!("functional {name} needs {} values", a.dim())));
                }
                Ok((a, LinearFunctional::new(values)))
            }
            FunctionalDecl::Density { algebra, density } => {
                let a = self.algebra(&algebra)?;
                let f = density_functional(&a, &density)?;
                Ok((a, f))
            }
        }
    }

    pub fn representation(&mut self, name: &str) -> Result<Representation> {
        let decl = self
            .doc
            .representations
            .get(name)
            .ok_or_else(|| Self::unresolved("representations", name))?
            .clone();
        match decl {
            RepresentationDecl::Defining { algebra } => defining_representation(self.algebra(&algebra)?),
            RepresentationDecl::Gns { algebra, functional } => {
                let (a, f) = self.functional(&functional)?;
                if !self.algebra(&algebra)?.same_structure(&a) {
                    return Err(Error::AlgebraMismatch);
                }
                Ok(gns(a, &f)?.representation)
            }
            RepresentationDecl::Explicit { algebra, gram, ops } => {
                let a = self.algebra(&algebra)?;
                let g = match gram {
                    GramRef::Module(m) => self.doc.modules[&m].clone(),
                    GramRef::Inline(g) => g,
                };
                Representation::new(a, InnerProductModule::new(g)?, ops)
            }
        }
    }

    pub fn module(&self, name: &str) -> Result<InnerProductModule> {
        let g = self.doc.modules.get(name).ok_or_else(|| Self::unresolved("modules", name))?;
        InnerProductModule::new(g.clone())
    }

    pub fn matrix(&self, name: &str) -> Result<Matrix> {
        self.doc
            .matrices
            .get(name)
            .cloned()
            .ok_or_else(|| Self::unresolved("matrices", name))
    }

    pub fn bimodule(&mut self, name: &str) -> Result<Bimodule> {
        self.bimodule_depth(name, 0)
    }

    fn bimodule_depth(&mut self, name: &str, depth: usize) -> Result<Bimodule> {
        if let Some(b) = self.bimodules.get(name) {
            return Ok(b.clone());
        }
        if depth > 32 {
            return Err(Error::BadParams(format!("bimodule {name} is defined in terms of itself")));
        }
        let decl = self
            .doc
            .bimodules
            .get(name)
            .ok_or_else(|| Self::unresolved("bimodules", name))?
            .clone();
        let built = match decl {
            BimoduleDecl::Free { algebra, n } => free_module_bimodule(self.algebra(&algebra)?, n, None)?,
            BimoduleDecl::Homomorphism { source, target, images } => {
                let phi = StarHomomorphism::new(self.algebra(&source)?, self.algebra(&target)?, images)?;
                homomorphism_bimodule(&phi)?
            }
            BimoduleDecl::Corner { algebra, size, projection } => {
                corner_bimodule(self.algebra(&algebra)?, size, &projection)?.bimodule
            }
            BimoduleDecl::Conjugate { of } => conjugate(&self.bimodule_depth(&of, depth + 1)?)?,
            BimoduleDecl::Tensor { left, right } => {
                let x = self.bimodule_depth(&left, depth + 1)?;
                let y = self.bimodule_depth(&right, depth + 1)?;
                tensor_bimodules(&x, &y)?.bimodule
            }
            BimoduleDecl::Explicit {
                left_algebra,
                right_algebra,
                left,
                right,
                inner_a,
                inner_b,
                cyclic_p,
                cyclic_q,
            } => {
                let b = self.algebra(&left_algebra)?;
                let a = self.algebra(&right_algebra)?;
                let mut x = Bimodule::new(b, a, left, right, inner_a)?;
                if let Some(h) = inner_b {
                    x = x.with_inner_b(h)?;
                }
                x.cyclic_p = cyclic_p.map(|s| CyclicStructure { submodules: s });
                x.cyclic_q = cyclic_q.map(|s| CyclicStructure { submodules: s });
                x
            }
        };
        self.bimodules.insert(name.to_string(), built.clone());
        Ok(built)
    }

    /// Builds every declared object and runs the structural validators.
    pub fn validate_all(&mut self) -> Result<Report> {
        let mut report = Report::new();
        let doc = self.doc;
        for name in doc.algebras.keys() {
            let a = self.algebra(name)?;
            for c in a.validate().checks {
                report.push(&format!("algebra {name}: {}", c.name), if c.passed { Ok(()) } else { Err(c.detail.unwrap_or_default()) });
            }
        }
        for name in doc.functionals.keys() {
            self.functional(name)?;
            report.pass(&format!("functional {name}: shape"));
        }
        for name in doc.modules.keys() {
            report.push(
                &format!("module {name}: positive semi-definite"),
                self.module(name).map(|_| ()).map_err(|e| e.to_string()),
            );
        }
        for name in doc.representations.keys() {
            let r = self.representation(name)?;
            for c in r.validate().checks {
                if c.name == "strongly_nondegenerate" {
                    continue;
                }
                report.push(
                    &format!("representation {name}: {}", c.name),
                    if c.passed { Ok(()) } else { Err(c.detail.unwrap_or_default()) },
                );
            }
        }
        for name in doc.bimodules.keys() {
            self.bimodule(name)?;
            report.pass(&format!("bimodule {name}: shape"));
        }
        Ok(report)
    }
}
