//! Conjugate, radical quotient and tensor products of bimodules.

use std::sync::Arc;

use super::core::{Bimodule, InnerTensor};
use super::cyclic::{CyclicStructure, CyclicSubmodule};
use crate::algebra::{find_unit, tensor_product, StarAlgebra};
use crate::error::{Error, Result};
use crate::linalg::{basis_vector, vec_kron, zero_vector, Matrix, Quotient, Vector};
use crate::rings::FracScalar;

fn conj_vec(v: &[FracScalar]) -> Vector {
    v.iter().map(FracScalar::conj).collect()
}

/// The (A-B)-bimodule `X̄` with `a·x̄ = conj(x·a*)`, `x̄·b = conj(b*·x)`,
/// `⟨x̄, ȳ⟩_B = _B⟨x, y⟩` and `_A⟨x̄, ȳ⟩ = ⟨x, y⟩_A`.
///
/// Coordinates `c` on `X̄` denote the vector `x̄` with `x` having
/// coordinates `conj(c)`.
pub fn conjugate(x: &Bimodule) -> Result<Bimodule> {
    let hb = x.inner_b.clone().ok_or(Error::MissingInnerB)?;
    let left = (0..x.a.dim())
        .map(|i| x.right_op(x.a.star_basis(i)).conj())
        .collect();
    let right = (0..x.b.dim())
        .map(|i| x.left_op(x.b.star_basis(i)).conj())
        .collect();
    let mut out = Bimodule::new(x.a.clone(), x.b.clone(), left, right, hb)?
        .with_inner_b(x.inner_a.clone())?;
    out.cyclic_p = x.cyclic_q.as_ref().map(|c| c.map(conj_vec));
    out.cyclic_q = x.cyclic_p.as_ref().map(|c| c.map(conj_vec));
    Ok(out)
}

/// `X / N` where `N` is the radical of the A-valued product.
#[derive(Clone, Debug)]
pub struct RadicalQuotient {
    pub bimodule: Bimodule,
    pub quotient: Quotient,
    pub radical_a: Vec<Vector>,
    pub radical_b: Option<Vec<Vector>>,
    /// `N_A = N_B`, when both products exist.
    pub radicals_agree: Option<bool>,
    /// `⟨x,x⟩ = 0 ⟹ x = 0` on the quotient, decided for matrix-model algebras.
    pub strictly_positive: Option<bool>,
}

/// Push inner-product data through a quotient: `h'(i,j) = Σ c̄_pi c_qj h(p,q)`
/// for `antilinear_first`, otherwise `Σ c_pi c̄_qj h(p,q)`.
pub(crate) fn descend_tensor(h: &InnerTensor, lift: &Matrix, n: usize, antilinear_first: bool) -> InnerTensor {
    let k = lift.cols();
    let m = lift.rows();
    let mut out = vec![vec![zero_vector(n); k]; k];
    for i in 0..k {
        for j in 0..k {
            let mut acc = zero_vector(n);
            for p in 0..m {
                let cp = &lift[(p, i)];
                if cp.is_zero() {
                    continue;
                }
                let cp = if antilinear_first { cp.conj() } else { cp.clone() };
                for q in 0..m {
                    let cq = &lift[(q, j)];
                    if cq.is_zero() {
                        continue;
                    }
                    let w = if antilinear_first { &cp * cq } else { &cp * &cq.conj() };
                    for (a, x) in acc.iter_mut().zip(&h[p][q]) {
                        if !x.is_zero() {
                            *a = &*a + &(&w * x);
                        }
                    }
                }
            }
            out[i][j] = acc;
        }
    }
    out
}

/// Descend all bimodule data along a quotient that both actions preserve.
pub(crate) fn descend_bimodule(x: &Bimodule, q: &Quotient) -> Result<Bimodule> {
    let desc = |ops: &[Matrix]| -> Result<Vec<Matrix>> {
        ops.iter()
            .map(|o| q.descend(o))
            .collect::<Result<Vec<_>>>()
            .map_err(|_| Error::InvalidBimodule("an action does not preserve the subspace".into()))
    };
    let left = desc(&x.left)?;
    let right = desc(&x.right)?;
    let inner_a = descend_tensor(&x.inner_a, &q.lift, x.a.dim(), true);
    let mut out = Bimodule::new(x.b.clone(), x.a.clone(), left, right, inner_a)?;
    if let Some(hb) = &x.inner_b {
        out = out.with_inner_b(descend_tensor(hb, &q.lift, x.b.dim(), false))?;
    }
    let project = |c: &CyclicStructure| {
        let mut c = c.map(|v| q.project(v));
        for s in &mut c.submodules {
            s.span.retain(|v| !crate::linalg::is_zero_vector(v));
        }
        c.submodules.retain(|s| !s.span.is_empty());
        c
    };
    out.cyclic_p = x.cyclic_p.as_ref().map(project);
    out.cyclic_q = x.cyclic_q.as_ref().map(project);
    Ok(out)
}

fn same_span(u: &[Vector], v: &[Vector], m: usize) -> bool {
    let ru = crate::linalg::rank_of(u, m);
    let mut all = u.to_vec();
    all.extend(v.iter().cloned());
    ru == crate::linalg::rank_of(v, m) && crate::linalg::rank_of(&all, m) == ru
}

/// Quotient by the radical `N = {x : ⟨x, ·⟩_A ≡ 0}`. Requires units on both
/// algebras, under which the two radicals coincide.
pub fn quotient_by_n(x: &Bimodule) -> Result<RadicalQuotient> {
    if find_unit(&x.a).is_none() || find_unit(&x.b).is_none() {
        return Err(Error::NoIdentityStructure);
    }
    let radical_a = x.radical_a();
    let radical_b = if x.inner_b.is_some() { Some(x.radical_b()?) } else { None };
    let radicals_agree = radical_b.as_ref().map(|rb| same_span(&radical_a, rb, x.dim));
    let quotient = Quotient::by_span(x.dim, &radical_a);
    let bimodule = descend_bimodule(x, &quotient)?;
    let strictly_positive = if x.a.model().is_some() {
        // with a PSD model Gram, ⟨x,x⟩ = 0 forces x into the radical
        let (outcome, _) = super::core::positivity(&x.a, &bimodule.inner_a, &[], None);
        Some(outcome.is_ok() && bimodule.radical_a().is_empty())
    } else {
        None
    };
    Ok(RadicalQuotient {
        bimodule,
        quotient,
        radical_a,
        radical_b,
        radicals_agree,
        strictly_positive,
    })
}

/// `X ⊗_A Y` for `X` a (B-A)- and `Y` an (A-C)-bimodule, with
/// `⟪x₁⊗y₁, x₂⊗y₂⟫_C = ⟨y₁, ⟨x₁,x₂⟩_A·y₂⟩_C` and
/// `_B⟪x₁⊗y₁, x₂⊗y₂⟫ = _B⟨x₁·_A⟨y₁,y₂⟩, x₂⟩`.
#[derive(Clone, Debug)]
pub struct BalancedTensor {
    pub bimodule: Bimodule,
    /// `X⊗Y → X⊗_A Y` with index `p·dim Y + r` on the left.
    pub quotient: Quotient,
}

pub fn tensor_bimodules(x: &Bimodule, y: &Bimodule) -> Result<BalancedTensor> {
    if !Arc::ptr_eq(&x.a, &y.b) && *x.a != *y.b {
        return Err(Error::MiddleAlgebraMismatch);
    }
    if x.cyclic_p.is_none() {
        return Err(Error::MissingCyclicWitness("left factor has no pseudo-cyclic structure for P".into()));
    }
    if y.cyclic_q.is_none() {
        return Err(Error::MissingCyclicWitness("right factor has no pseudo-cyclic structure for Q".into()));
    }
    let (mx, my) = (x.dim, y.dim);
    let dim = mx * my;
    let mid = &x.a;
    // relations x·a ⊗ y − x ⊗ a·y on basis triples
    let mut relations = Vec::new();
    for i in 0..mid.dim() {
        for p in 0..mx {
            let xa = x.right[i].column(p);
            for r in 0..my {
                let ay = y.left[i].column(r);
                let lhs = vec_kron(&xa, &basis_vector(my, r));
                let rhs = vec_kron(&basis_vector(mx, p), &ay);
                relations.push(crate::linalg::vec_sub(&lhs, &rhs));
            }
        }
    }
    let quotient = Quotient::by_span(dim, &relations);
    let id_x = Matrix::identity(mx);
    let id_y = Matrix::identity(my);
    let left_full: Vec<Matrix> = x.left.iter().map(|l| l.kron(&id_y)).collect();
    let right_full: Vec<Matrix> = y.right.iter().map(|r| id_x.kron(r)).collect();
    let c = &y.a;
    let hy_c = &y.inner_a;
    let inner_c: InnerTensor = (0..dim)
        .map(|s| {
            (0..dim)
                .map(|t| {
                    let (p, r) = (s / my, s % my);
                    let (q, u) = (t / my, t % my);
                    // ⟨e_r, ⟨e_p,e_q⟩_A · e_u⟩_C
                    let v = y.left_op(&x.inner_a[p][q]).column(u);
                    let mut acc = zero_vector(c.dim());
                    for (w, coeff) in v.iter().enumerate() {
                        if !coeff.is_zero() {
                            acc = crate::linalg::vec_add(&acc, &crate::linalg::vec_scale(coeff, &hy_c[r][w]));
                        }
                    }
                    acc
                })
                .collect()
        })
        .collect();
    let inner_b_full: Option<InnerTensor> = match (&x.inner_b, &y.inner_b) {
        (Some(hx_b), Some(hy_a)) => Some(
            (0..dim)
                .map(|s| {
                    (0..dim)
                        .map(|t| {
                            let (p, r) = (s / my, s % my);
                            let (q, u) = (t / my, t % my);
                            // _B⟨e_p·_A⟨e_r,e_u⟩, e_q⟩
                            let v = x.right_op(&hy_a[r][u]).column(p);
                            let mut acc = zero_vector(x.b.dim());
                            for (w, coeff) in v.iter().enumerate() {
                                if !coeff.is_zero() {
                                    acc = crate::linalg::vec_add(&acc, &crate::linalg::vec_scale(coeff, &hx_b[w][q]));
                                }
                            }
                            acc
                        })
                        .collect()
                })
                .collect(),
        ),
        _ => None,
    };
    let mut full = Bimodule::new(x.b.clone(), y.a.clone(), left_full, right_full, inner_c)?;
    if let Some(hb) = inner_b_full {
        full = full.with_inner_b(hb)?;
    }
    // candidates: classes of Ω ⊗ Ω' and of elementary basis tensors
    let mut candidates: Vec<Vector> = Vec::new();
    for sx in x.cyclic_p.iter().flat_map(|c| &c.submodules) {
        for sy in y.cyclic_q.iter().flat_map(|c| &c.submodules) {
            for ox in &sx.cyclic {
                for oy in &sy.cyclic {
                    candidates.push(vec_kron(ox, oy));
                }
            }
        }
    }
    candidates.extend((0..dim).map(|s| basis_vector(dim, s)));
    let mut bimodule = descend_bimodule(&full, &quotient)?;
    let projected: Vec<Vector> = candidates.iter().map(|v| quotient.project(v)).collect();
    bimodule.cyclic_p = CyclicStructure::search(bimodule.dim, &bimodule.right, &projected, |u, v| {
        bimodule.inner_a(u, v)
    });
    if bimodule.inner_b.is_some() {
        bimodule.cyclic_q = CyclicStructure::search(bimodule.dim, &bimodule.left, &projected, |u, v| {
            bimodule.inner_b(u, v).expect("present")
        });
    }
    Ok(BalancedTensor { bimodule, quotient })
}

/// External tensor product `X₁ ⊗ X₂` as a `(B₁⊗B₂)-(A₁⊗A₂)`-bimodule with
/// `⟨x₁⊗x₂, y₁⊗y₂⟩ = ⟨x₁,y₁⟩ ⊗ ⟨x₂,y₂⟩` on both sides.
pub fn tensor_algebra_bimodules(x1: &Bimodule, x2: &Bimodule) -> Result<Bimodule> {
    let b: Arc<StarAlgebra> = Arc::new(tensor_product(&x1.b, &x2.b));
    let a: Arc<StarAlgebra> = Arc::new(tensor_product(&x1.a, &x2.a));
    let n_b2 = x2.b.dim();
    let n_a2 = x2.a.dim();
    let left = (0..b.dim())
        .map(|k| x1.left[k / n_b2].kron(&x2.left[k % n_b2]))
        .collect();
    let right = (0..a.dim())
        .map(|k| x1.right[k / n_a2].kron(&x2.right[k % n_a2]))
        .collect();
    let m2 = x2.dim;
    let dim = x1.dim * m2;
    let kron_tensor = |h1: &InnerTensor, h2: &InnerTensor| -> InnerTensor {
        (0..dim)
            .map(|s| {
                (0..dim)
                    .map(|t| vec_kron(&h1[s / m2][t / m2], &h2[s % m2][t % m2]))
                    .collect()
            })
            .collect()
    };
    let mut out = Bimodule::new(b, a, left, right, kron_tensor(&x1.inner_a, &x2.inner_a))?;
    if let (Some(h1), Some(h2)) = (&x1.inner_b, &x2.inner_b) {
        out = out.with_inner_b(kron_tensor(h1, h2))?;
    }
    let product = |c1: &CyclicStructure, c2: &CyclicStructure| -> CyclicStructure {
        let mut submodules = Vec::new();
        for s1 in &c1.submodules {
            for s2 in &c2.submodules {
                let span = s1
                    .span
                    .iter()
                    .flat_map(|u| s2.span.iter().map(move |v| vec_kron(u, v)))
                    .collect();
                // diagonal of the two filtrations, padded with their last steps
                let steps = s1.cyclic.len().max(s2.cyclic.len());
                let cyclic = (0..steps)
                    .map(|k| {
                        let o1 = &s1.cyclic[k.min(s1.cyclic.len() - 1)];
                        let o2 = &s2.cyclic[k.min(s2.cyclic.len() - 1)];
                        vec_kron(o1, o2)
                    })
                    .collect();
                submodules.push(CyclicSubmodule { span, cyclic });
            }
        }
        CyclicStructure { submodules }
    };
    if let (Some(c1), Some(c2)) = (&x1.cyclic_p, &x2.cyclic_p) {
        if c1.submodules.iter().chain(&c2.submodules).all(|s| !s.cyclic.is_empty()) {
            out.cyclic_p = Some(product(c1, c2));
        }
    }
    if let (Some(c1), Some(c2)) = (&x1.cyclic_q, &x2.cyclic_q) {
        if c1.submodules.iter().chain(&c2.submodules).all(|s| !s.cyclic.is_empty()) {
            out.cyclic_q = Some(product(c1, c2));
        }
    }
    Ok(out)
}
