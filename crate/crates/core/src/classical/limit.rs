//! `λ ↦ 0` on modules, operators, representations and bimodules, dividing
//! out the vectors whose products vanish in the limit.

use std::sync::Arc;

use crate::algebra::{deformation_container, functional_positivity, LinearFunctional, StarAlgebra};
use crate::bimodule::{descend_bimodule, Bimodule, CyclicStructure, CyclicSubmodule, InnerTensor};
use crate::error::{Error, Result};
use crate::linalg::{kernel_basis, psd_decide, rank_of, Matrix, PsdCertificate, Quotient, Vector};
use crate::prehilbert::{InnerProductModule, Representation};
use crate::rings::FracScalar;

pub(crate) fn limit_vector(v: &[FracScalar]) -> Result<Vector> {
    v.iter().map(FracScalar::classical_limit).collect()
}

fn limit_tensor(h: &InnerTensor) -> Result<InnerTensor> {
    h.iter()
        .map(|row| row.iter().map(|v| limit_vector(v)).collect())
        .collect()
}

fn limit_cyclic(c: &CyclicStructure) -> Result<CyclicStructure> {
    let submodules = c
        .submodules
        .iter()
        .map(|s| {
            Ok(CyclicSubmodule {
                span: s.span.iter().map(|v| limit_vector(v)).collect::<Result<_>>()?,
                cyclic: s.cyclic.iter().map(|v| limit_vector(v)).collect::<Result<_>>()?,
            })
        })
        .collect::<Result<_>>()?;
    Ok(CyclicStructure { submodules })
}

/// `φ ↦ 𝔠φ`: evaluate at `λ = 0`, then project to the quotient.
#[derive(Clone, Debug)]
pub struct LimitMap {
    pub source_dim: usize,
    /// On `λ = 0` coordinates; divides out `H_L`.
    pub quotient: Quotient,
}

impl LimitMap {
    pub fn target_dim(&self) -> usize {
        self.quotient.dim()
    }

    pub fn apply(&self, v: &[FracScalar]) -> Result<Vector> {
        Ok(self.quotient.project(&limit_vector(v)?))
    }

    /// Basis of `H_L` in `λ = 0` coordinates.
    pub fn limit_kernel(&self) -> &[Vector] {
        &self.quotient.kernel
    }
}

/// `𝔠H = H / (λH + H_L)` with `⟨𝔠φ, 𝔠ψ⟩ = 𝔠⟨φ, ψ⟩`.
pub fn cl_prehilbert(h: &InnerProductModule) -> Result<(InnerProductModule, LimitMap)> {
    let cert = psd_decide(h.gram())?;
    if !cert.is_positive() {
        return Err(Error::NotPsd {
            witness: cert.witness.unwrap_or_default(),
        });
    }
    let g0 = h.gram().classical_limit()?;
    let quotient = Quotient::by_span(h.dim(), &kernel_basis(&g0));
    let gram = quotient.descend_form(&g0);
    Ok((
        InnerProductModule::new(gram)?,
        LimitMap {
            source_dim: h.dim(),
            quotient,
        },
    ))
}

/// `𝔠A[φ] = [A(0)φ]`; needs `A(0)` to preserve `H_L`.
pub fn cl_operator(map: &LimitMap, a: &Matrix) -> Result<Matrix> {
    let a0 = a.classical_limit()?;
    map.quotient
        .descend(&a0)
        .map_err(|_| Error::NotAdjointable("λ = 0 part does not preserve the limit radical".into()))
}

pub fn cl_representation(rep: &Representation) -> Result<(Representation, LimitMap)> {
    let algebra = Arc::new(deformation_container(&rep.algebra)?);
    let (module, map) = cl_prehilbert(&rep.module)?;
    let ops = rep
        .ops
        .iter()
        .map(|o| cl_operator(&map, o))
        .collect::<Result<Vec<_>>>()?;
    let cyclic = rep
        .cyclic
        .iter()
        .map(|v| map.apply(v))
        .collect::<Result<Vec<_>>>()?;
    Ok((Representation::new(algebra, module, ops)?.with_cyclic(cyclic), map))
}

#[derive(Clone, Debug)]
pub struct ClassicalBimodule {
    pub bimodule: Bimodule,
    /// On `λ = 0` coordinates; divides out `X_L`.
    pub quotient: Quotient,
    /// `X_L = {x : 𝔠⟨x, y⟩_A = 0 ∀y}`.
    pub radical_a: Vec<Vector>,
    /// `_L X`, when a B-valued product is present.
    pub radical_b: Option<Vec<Vector>>,
    pub radicals_agree: Option<bool>,
}

/// Entrywise `λ ↦ 0` without dividing anything out.
pub(crate) fn evaluate_at_zero(x: &Bimodule) -> Result<Bimodule> {
    let b0 = Arc::new(deformation_container(&x.b)?);
    let a0 = Arc::new(deformation_container(&x.a)?);
    let lim = |ops: &[Matrix]| ops.iter().map(Matrix::classical_limit).collect::<Result<Vec<_>>>();
    let mut x0 = Bimodule::new(b0, a0, lim(&x.left)?, lim(&x.right)?, limit_tensor(&x.inner_a)?)?;
    if let Some(hb) = &x.inner_b {
        x0 = x0.with_inner_b(limit_tensor(hb)?)?;
    }
    x0.cyclic_p = x.cyclic_p.as_ref().map(limit_cyclic).transpose()?;
    x0.cyclic_q = x.cyclic_q.as_ref().map(limit_cyclic).transpose()?;
    Ok(x0)
}

fn same_span(u: &[Vector], v: &[Vector], n: usize) -> bool {
    let r = rank_of(u, n);
    r == rank_of(v, n) && rank_of(&u.iter().chain(v).cloned().collect::<Vec<_>>(), n) == r
}

pub fn cl_bimodule(x: &Bimodule) -> Result<ClassicalBimodule> {
    let x0 = evaluate_at_zero(x)?;
    let radical_a = x0.radical_a();
    let radical_b = x0.inner_b.as_ref().map(|_| x0.radical_b()).transpose()?;
    let radicals_agree = radical_b.as_ref().map(|rb| same_span(&radical_a, rb, x.dim));
    let quotient = Quotient::by_span(x.dim, &radical_a);
    let bimodule = descend_bimodule(&x0, &quotient)?;
    Ok(ClassicalBimodule {
        bimodule,
        quotient,
        radical_a,
        radical_b,
        radicals_agree,
    })
}

#[derive(Clone, Debug)]
pub enum LiftOutcome {
    /// `ω = ω₀` is positive on the deformed algebra.
    Lifted { certificate: PsdCertificate },
    /// The constant lift is not positive; no other lift is searched for.
    ConstantLiftFails { witness: Vector },
}

/// Whether the λ-constant lift of a classically positive functional stays
/// positive.
pub fn positive_lift_check(deformed: &StarAlgebra, omega0: &LinearFunctional) -> Result<LiftOutcome> {
    let limit = deformation_container(deformed)?;
    let classical = functional_positivity(&limit, omega0)?;
    if !classical.is_positive() {
        return Err(Error::NotPositiveFunctional {
            witness: classical.witness.unwrap_or_default(),
        });
    }
    let cert = functional_positivity(deformed, omega0)?;
    Ok(if cert.is_positive() {
        LiftOutcome::Lifted { certificate: cert }
    } else {
        LiftOutcome::ConstantLiftFails {
            witness: cert.witness.unwrap_or_default(),
        }
    })
}
