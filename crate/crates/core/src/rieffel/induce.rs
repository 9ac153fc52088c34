//! `R_X(π)`: the quotiented balanced tensor `X ⊗_A H` with the induced
//! B-representation.

use crate::bimodule::Bimodule;
use crate::error::{Error, Result};
use crate::linalg::{
    is_zero_vector, kernel_basis, psd_decide, vec_kron, vec_sub, Matrix, PsdCertificate, Quotient, Vector,
};
use crate::prehilbert::{classify, InnerProductModule, Intertwiner, Representation};
use crate::report::Report;
use crate::rings::FracScalar;

#[derive(Clone, Debug)]
pub struct InductionResult {
    /// The representation that was induced.
    pub source: Representation,
    /// `dim X · dim H`; `e_p ⊗ e_r` has index `p·dim H + r`.
    pub tensor_dim: usize,
    /// `X⊗H → K̃ = X ⊗_A H`.
    pub balanced: Quotient,
    /// Gram of `K̃` in the basis lifted by `balanced`.
    pub balanced_gram: Matrix,
    pub certificate: PsdCertificate,
    /// `X⊗H → 𝔎 = K̃ / N`, dividing out relations and null vectors at once.
    pub quotient: Quotient,
    /// `π_B` on `𝔎`.
    pub representation: Representation,
    pub validation: Report,
}

impl InductionResult {
    pub fn dim(&self) -> usize {
        self.quotient.dim()
    }

    pub fn balanced_dim(&self) -> usize {
        self.balanced.dim()
    }

    /// `[x ⊗ ψ]` in `𝔎`.
    pub fn class_of(&self, x: &[FracScalar], psi: &[FracScalar]) -> Vector {
        self.quotient.project(&vec_kron(x, psi))
    }
}

/// `⟨e_p⊗e_r, e_q⊗e_s⟩ = ⟨e_r, π(hA(p,q)) e_s⟩`.
pub(crate) fn tensor_gram(x: &Bimodule, rep: &Representation) -> Matrix {
    let (m, d) = (x.dim, rep.dim());
    let blocks: Vec<Vec<Matrix>> = (0..m)
        .map(|p| (0..m).map(|q| rep.gram() * &rep.op(&x.inner_a[p][q])).collect())
        .collect();
    Matrix::from_fn(m * d, m * d, |i, j| blocks[i / d][j / d][(i % d, j % d)].clone())
}

/// `x·a ⊗ ψ − x ⊗ π(a)ψ` on basis triples.
pub(crate) fn balancing_relations(x: &Bimodule, rep: &Representation) -> Vec<Vector> {
    let (m, d) = (x.dim, rep.dim());
    let mut out = Vec::new();
    for i in 0..x.a.dim() {
        for p in 0..m {
            let xa = x.right[i].column(p);
            let ep = crate::linalg::basis_vector(m, p);
            for r in 0..d {
                let er = crate::linalg::basis_vector(d, r);
                let v = vec_sub(&vec_kron(&xa, &er), &vec_kron(&ep, &rep.ops[i].column(r)));
                if !is_zero_vector(&v) {
                    out.push(v);
                }
            }
        }
    }
    out
}

pub fn induce(x: &Bimodule, rep: &Representation) -> Result<InductionResult> {
    if !std::sync::Arc::ptr_eq(&x.a, &rep.algebra) && *x.a != *rep.algebra {
        return Err(Error::AlgebraMismatch);
    }
    let (m, d) = (x.dim, rep.dim());
    let n = m * d;
    let g = tensor_gram(x, rep);
    let relations = balancing_relations(x, rep);
    for rel in &relations {
        if !is_zero_vector(&g.apply(rel)) {
            return Err(Error::InvalidBimodule(
                "induced product does not vanish on the balancing relations".into(),
            ));
        }
    }
    let balanced = Quotient::by_span(n, &relations);
    let balanced_gram = balanced.descend_form(&g);
    let certificate = psd_decide(&balanced_gram)?;
    if !certificate.is_positive() {
        let w = certificate.witness.clone().unwrap_or_default();
        return Err(Error::PositivityViolated {
            witness: balanced.lift.apply(&w),
        });
    }
    let mut divided = relations;
    divided.extend(kernel_basis(&balanced_gram).iter().map(|k| balanced.lift.apply(k)));
    let quotient = Quotient::by_span(n, &divided);
    let gram = quotient.descend_form(&g);
    let id = Matrix::identity(d);
    let ops = x
        .left
        .iter()
        .map(|l| quotient.descend(&l.kron(&id)))
        .collect::<Result<Vec<_>>>()
        .map_err(|_| Error::InvalidBimodule("left action does not descend to the quotient".into()))?;
    let representation = Representation::new(x.b.clone(), InnerProductModule::trusted(gram), ops)?;
    let validation = representation.validate();
    Ok(InductionResult {
        source: rep.clone(),
        tensor_dim: n,
        balanced,
        balanced_gram,
        certificate,
        quotient,
        representation,
        validation,
    })
}

/// Operator `id_X ⊗ T` on the tensors, pushed down to the quotients.
fn descend_between(from: &Quotient, to: &Quotient, ambient: &Matrix) -> Result<Matrix> {
    for k in &from.kernel {
        if !is_zero_vector(&to.project(&ambient.apply(k))) {
            return Err(Error::NotIntertwiner(
                "induced map is not well defined on the quotient".into(),
            ));
        }
    }
    Ok(&(&to.proj * ambient) * &from.lift)
}

/// `Ṽ[x⊗ψ] = [x⊗Tψ]` for an intertwiner `T` between the induced
/// representations' sources.
pub fn induce_intertwiner(
    x: &Bimodule,
    from: &InductionResult,
    to: &InductionResult,
    t: &Matrix,
) -> Result<Intertwiner> {
    let base = classify(t, &from.source, &to.source)?;
    if !base.adjointable && !base.isometric {
        return Err(Error::NotIntertwiner("T is neither isometric nor adjointable".into()));
    }
    let ambient = Matrix::identity(x.dim).kron(t);
    let v = descend_between(&from.quotient, &to.quotient, &ambient)?;
    classify(&v, &from.representation, &to.representation)
}

/// `[x⊗ψ] ↦ [x⊗Cψ]` for `C` in the commutant of the source representation.
pub fn commutant_map(x: &Bimodule, ind: &InductionResult, c: &Matrix) -> Result<Matrix> {
    let rep = &ind.source;
    if c.rows() != rep.dim() || c.cols() != rep.dim() || rep.ops.iter().any(|o| &(o * c) != &(c * o)) {
        return Err(Error::NotInCommutant);
    }
    let ambient = Matrix::identity(x.dim).kron(c);
    descend_between(&ind.quotient, &ind.quotient, &ambient).map_err(|_| Error::NotInCommutant)
}

/// Checks that `C ↦ C̃` is a *-homomorphism into the commutant of `π_B` on
/// the given commutant elements (pairwise products, adjoints).
pub fn verify_commutant_map(x: &Bimodule, ind: &InductionResult, commutant: &[Matrix]) -> Result<Report> {
    let mut report = Report::new();
    let images = commutant
        .iter()
        .map(|c| commutant_map(x, ind, c))
        .collect::<Result<Vec<_>>>()?;
    let pi = &ind.representation;
    let mut outcome = Ok(());
    'outer: for (i, ci) in commutant.iter().enumerate() {
        for (j, cj) in commutant.iter().enumerate() {
            if commutant_map(x, ind, &(ci * cj))? != &images[i] * &images[j] {
                outcome = Err(format!("(C{i}C{j})~ ≠ C̃{i} C̃{j}"));
                break 'outer;
            }
        }
    }
    report.push("multiplicative", outcome);
    let mut outcome = Ok(());
    let source_nondegenerate = ind.source.module.is_nondegenerate();
    if pi.module.is_nondegenerate() && source_nondegenerate {
        for (i, c) in commutant.iter().enumerate() {
            let adj = ind.source.module.adjoint(c)?;
            if commutant_map(x, ind, &adj)? != pi.module.adjoint(&images[i])? {
                outcome = Err(format!("(C{i}*)~ ≠ (C̃{i})*"));
                break;
            }
        }
    } else {
        outcome = Err("adjoints need non-degenerate products on both sides".into());
    }
    report.push("star_preserving", outcome);
    let mut outcome = Ok(());
    for (i, img) in images.iter().enumerate() {
        if pi.ops.iter().any(|o| &(o * img) != &(img * o)) {
            outcome = Err(format!("C̃{i} does not commute with π_B"));
            break;
        }
    }
    report.push("in_induced_commutant", outcome);
    Ok(report)
}

/// The canonical unitary `R_X(π₁⊕π₂) → R_X(π₁) ⊕ R_X(π₂)`.
pub fn direct_sum_unitary(x: &Bimodule, r1: &Representation, r2: &Representation) -> Result<Intertwiner> {
    let sum = crate::prehilbert::direct_sum(&[r1, r2])?;
    let whole = induce(x, &sum)?;
    let i1 = induce(x, r1)?;
    let i2 = induce(x, r2)?;
    let (m, d1, d2) = (x.dim, r1.dim(), r2.dim());
    let d = d1 + d2;
    // e_p ⊗ e_r ↦ (e_p⊗e_r, 0) or (0, e_p⊗e_{r−d1})
    let split = Matrix::from_fn(m * d1 + m * d2, m * d, |i, j| {
        let (p, r) = (j / d, j % d);
        let target = if r < d1 { p * d1 + r } else { m * d1 + p * d2 + (r - d1) };
        if i == target {
            FracScalar::one()
        } else {
            FracScalar::zero()
        }
    });
    let proj = Matrix::direct_sum(&[&i1.quotient.proj, &i2.quotient.proj]);
    let target = Quotient {
        ambient: m * d,
        proj: &proj * &split,
        lift: Matrix::zeros(m * d, 0),
        kernel: Vec::new(),
    };
    let u = descend_between(&whole.quotient, &target, &Matrix::identity(m * d))?;
    let summed = crate::prehilbert::direct_sum(&[&i1.representation, &i2.representation])?;
    classify(&u, &whole.representation, &summed)
}
