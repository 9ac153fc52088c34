//! Induction commutes with the classical limit; deformed homomorphism
//! bimodules.

use std::sync::Arc;

use super::limit::{cl_bimodule, cl_representation, ClassicalBimodule};
use crate::algebra::{deformation_container, matrix_algebra, StarAlgebra, StarHomomorphism};
use crate::bimodule::{homomorphism_bimodule, Bimodule};
use crate::error::{Error, Result};
use crate::linalg::{is_zero_vector, kernel_basis, vec_sub, Matrix, Quotient, Vector};
use crate::prehilbert::{classify, InnerProductModule, Intertwiner, Representation};
use crate::rieffel::{induce, tensor_gram, InductionResult};
use crate::rings::FracScalar;

#[derive(Clone, Debug)]
pub struct NaturalityResult {
    pub deformed: InductionResult,
    /// `𝔠(R_X(π))`.
    pub limit_of_induced: Representation,
    /// `R_{𝔠X}(𝔠π)`.
    pub induced_from_limit: InductionResult,
    /// `𝔠[x⊗φ] ↦ [𝔠x ⊗ 𝔠φ]`.
    pub unitary: Intertwiner,
}

/// `𝔠(R_X(π)) ≅ R_{𝔠X}(𝔠π)` via the explicit map on elementary tensors.
pub fn naturality_check(x: &Bimodule, rep: &Representation) -> Result<NaturalityResult> {
    let deformed = induce(x, rep)?;
    let (m, d) = (x.dim, rep.dim());
    let n = m * d;
    // 𝔠 of the induced space: relations and nulls already lie in ker G̃(0)
    let g0 = tensor_gram(x, rep).classical_limit()?;
    let limit_q = Quotient::by_span(n, &kernel_basis(&g0));
    let b0 = Arc::new(deformation_container(&x.b)?);
    let id = Matrix::identity(d);
    let ops = x
        .left
        .iter()
        .map(|l| limit_q.descend(&l.classical_limit()?.kron(&id)))
        .collect::<Result<Vec<_>>>()
        .map_err(|_| Error::InvalidBimodule("λ = 0 action does not preserve the limit radical".into()))?;
    let limit_of_induced = Representation::new(b0, InnerProductModule::new(limit_q.descend_form(&g0))?, ops)?;
    let cx = cl_bimodule(x)?;
    let (crep, cmap) = cl_representation(rep)?;
    let induced_from_limit = induce(&cx.bimodule, &crep)?;
    let ambient = &induced_from_limit.quotient.proj * &cx.quotient.proj.kron(&cmap.quotient.proj);
    for k in &limit_q.kernel {
        if !is_zero_vector(&ambient.apply(k)) {
            return Err(Error::NotIntertwiner("limit map is not well defined on elementary tensors".into()));
        }
    }
    let u = &ambient * &limit_q.lift;
    let unitary = classify(&u, &limit_of_induced, &induced_from_limit.representation)?;
    Ok(NaturalityResult {
        deformed,
        limit_of_induced,
        induced_from_limit,
        unitary,
    })
}

/// Lowest λ-order among the entries of a nonzero vector.
fn lowest_order(v: &[FracScalar]) -> i64 {
    v.iter().filter_map(FracScalar::lambda_order).min().unwrap_or(i64::MAX)
}

/// Checks multiplicativity and star compatibility order by order and names
/// the lowest failing power of λ.
pub fn check_deformed_homomorphism(
    source: &StarAlgebra,
    target: &StarAlgebra,
    images: &[Vector],
) -> Result<()> {
    let phi = |a: &[FracScalar]| -> Vector {
        crate::linalg::combine(a, images, target.dim())
    };
    let mut worst: Option<(i64, String)> = None;
    let mut note = |order: i64, what: String| {
        if worst.as_ref().is_none_or(|(o, _)| order < *o) {
            worst = Some((order, what));
        }
    };
    for i in 0..source.dim() {
        for j in 0..source.dim() {
            let diff = vec_sub(&phi(&source.mul_basis(i, j)), &target.mul(&images[i], &images[j]));
            if !is_zero_vector(&diff) {
                note(lowest_order(&diff), format!("Φ(e{i}e{j}) ≠ Φ(e{i})Φ(e{j})"));
            }
        }
        let diff = vec_sub(&phi(source.star_basis(i)), &target.star(&images[i]));
        if !is_zero_vector(&diff) {
            note(lowest_order(&diff), format!("Φ(e{i}*) ≠ Φ(e{i})*"));
        }
    }
    match worst {
        None => Ok(()),
        Some((order, what)) => Err(Error::NotStarHomomorphism(format!("{what} at order λ^{order}"))),
    }
}

#[derive(Clone, Debug)]
pub struct DeformedHomomorphismComparison {
    pub homomorphism: StarHomomorphism,
    pub bimodule: Bimodule,
    pub limit: ClassicalBimodule,
    /// Homomorphism bimodule of `𝔠Φ`.
    pub classical: Bimodule,
    /// `Ok` when the canonical identification is an isomorphism of rigged
    /// bimodules.
    pub isomorphic: std::result::Result<(), String>,
}

pub fn deformed_homomorphism_bimodule(
    source: Arc<StarAlgebra>,
    target: Arc<StarAlgebra>,
    images: Vec<Vector>,
) -> Result<DeformedHomomorphismComparison> {
    check_deformed_homomorphism(&source, &target, &images)?;
    let homomorphism = StarHomomorphism::new(source, target, images)?;
    let bimodule = homomorphism_bimodule(&homomorphism)?;
    let limit = cl_bimodule(&bimodule)?;
    let classical = homomorphism_bimodule(&homomorphism.classical_limit()?)?;
    let isomorphic = rigged_isomorphic(&limit.quotient.proj, &classical, &limit.bimodule);
    Ok(DeformedHomomorphismComparison {
        homomorphism,
        bimodule,
        limit,
        classical,
        isomorphic,
    })
}

/// Whether `t: X → Y` is a bijection intertwining both actions and the
/// A-valued products. The algebras are compared structurally.
pub fn rigged_isomorphic(t: &Matrix, x: &Bimodule, y: &Bimodule) -> std::result::Result<(), String> {
    if !x.b.same_structure(&y.b) || !x.a.same_structure(&y.a) {
        return Err("algebras differ".into());
    }
    if t.rows() != y.dim || t.cols() != x.dim || crate::linalg::rank(t) != x.dim || x.dim != y.dim {
        return Err("not a bijection".into());
    }
    for (i, (lx, ly)) in x.left.iter().zip(&y.left).enumerate() {
        if &(t * lx) != &(ly * t) {
            return Err(format!("left action of e{i} differs"));
        }
    }
    for (i, (rx, ry)) in x.right.iter().zip(&y.right).enumerate() {
        if &(t * rx) != &(ry * t) {
            return Err(format!("right action of e{i} differs"));
        }
    }
    for p in 0..x.dim {
        for q in 0..x.dim {
            if y.inner_a(&t.column(p), &t.column(q)) != x.inner_a[p][q] {
                return Err(format!("A-valued product differs at ({p},{q})"));
            }
        }
    }
    Ok(())
}

/// `Φ(a) = u a u* / (1+λ²)` on `M₂` over the deformation ring, with
/// `u = 1 + λh`, `h = [[0,1],[−1,0]]`; `uu* = (1+λ²)·1`.
pub fn rotation_conjugation() -> Result<(Arc<StarAlgebra>, Vec<Vector>)> {
    let m2 = Arc::new(matrix_algebra(2)?);
    let lam = FracScalar::lambda();
    let one = FracScalar::one();
    let u = Matrix::from_rows(vec![vec![one.clone(), lam.clone()], vec![-&lam, one.clone()]])?;
    let norm = (&one + &(&lam * &lam)).inv()?;
    let images = (0..4)
        .map(|k| {
            let e = Matrix::unit(2, 2, k / 2, k % 2);
            let conj = (&(&u * &e) * &u.adjoint()).scale(&norm);
            crate::algebra::builtin::matrix_element(&conj)
        })
        .collect();
    Ok((m2, images))
}
