//! Standard bimodules: free modules, homomorphism bimodules and corners.

use std::sync::Arc;

use super::core::{Bimodule, InnerTensor};
use super::cyclic::{CyclicStructure, CyclicSubmodule};
use crate::algebra::{
    find_unit, matrix_algebra, tensor_product, validate_approx_identity, AlgebraKind,
    ApproxIdentityWitness, MatrixModel, StarAlgebra, StarHomomorphism,
};
use crate::error::{Error, Result};
use crate::linalg::{
    basis_vector, coordinates_in, independent_subset, rank_of, solve, vec_kron, zero_vector, Matrix,
    Vector,
};
use crate::rings::FracScalar;

/// Unit or approximate identity elements `E_α` of an algebra.
fn identity_elements(alg: &StarAlgebra, approx: Option<&ApproxIdentityWitness>) -> Result<Vec<Vector>> {
    if let Some(u) = find_unit(alg) {
        return Ok(vec![u]);
    }
    match approx {
        Some(w) => {
            validate_approx_identity(alg, w)?;
            Ok(w.elements.clone())
        }
        None => Err(Error::NoIdentityStructure),
    }
}

/// `Aⁿ` as a `(𝒦(Aⁿ) ≅ M_n ⊗ A)-A` equivalence bimodule with
/// `⟨w, z⟩_A = Σ w_i* z_i` and `_𝒦⟨w, z⟩ = Θ_{w,z} = (w_i z_j*)_{ij}`.
/// Coordinates are `e_i ⊗ a_k` at index `i·dim A + k`.
pub fn free_module_bimodule(
    a: Arc<StarAlgebra>,
    n: usize,
    approx: Option<&ApproxIdentityWitness>,
) -> Result<Bimodule> {
    if n == 0 {
        return Err(Error::BadParams("free module needs n ≥ 1".into()));
    }
    let units = identity_elements(&a, approx)?;
    let mn = matrix_algebra(n)?;
    let b = Arc::new(tensor_product(&mn, &a));
    let da = a.dim();
    let m = n * da;
    let id_n = Matrix::identity(n);
    let left = (0..b.dim())
        .map(|x| {
            let (ij, k) = (x / da, x % da);
            Matrix::unit(n, n, ij / n, ij % n).kron(&a.left_mult(&a.basis(k)))
        })
        .collect();
    let right = (0..da).map(|k| id_n.kron(&a.right_mult(&a.basis(k)))).collect();
    let inner_a: InnerTensor = (0..m)
        .map(|s| {
            (0..m)
                .map(|t| {
                    let ((i, k), (j, l)) = ((s / da, s % da), (t / da, t % da));
                    if i == j {
                        a.mul(a.star_basis(k), &a.basis(l))
                    } else {
                        zero_vector(da)
                    }
                })
                .collect()
        })
        .collect();
    let inner_b: InnerTensor = (0..m)
        .map(|s| {
            (0..m)
                .map(|t| {
                    let ((i, k), (j, l)) = ((s / da, s % da), (t / da, t % da));
                    vec_kron(&basis_vector(n * n, i * n + j), &a.mul(&a.basis(k), a.star_basis(l)))
                })
                .collect()
        })
        .collect();
    let embed = |i: usize, v: &[FracScalar]| vec_kron(&basis_vector(n, i), v);
    let cyclic_p = CyclicStructure {
        submodules: (0..n)
            .map(|i| CyclicSubmodule {
                span: (0..da).map(|k| embed(i, &a.basis(k))).collect(),
                cyclic: units.iter().map(|u| embed(i, u)).collect(),
            })
            .collect(),
    };
    let cyclic_q = CyclicStructure {
        submodules: vec![CyclicSubmodule {
            span: (0..m).map(|s| basis_vector(m, s)).collect(),
            cyclic: units.iter().map(|u| embed(0, u)).collect(),
        }],
    };
    Ok(Bimodule::new(b, a, left, right, inner_a)?
        .with_inner_b(inner_b)?
        .with_cyclic_p(cyclic_p)
        .with_cyclic_q(cyclic_q))
}

/// `A` as a (B-A)-bimodule through `Φ: B → A`: `b·x = Φ(b)x`, `x·a = xa`,
/// `⟨x, y⟩_A = x*y`. When `Φ` is bijective, `_B⟨x, y⟩ = Φ⁻¹(xy*)` is added.
pub fn homomorphism_bimodule(phi: &StarHomomorphism) -> Result<Bimodule> {
    let a = phi.target.clone();
    let m = a.dim();
    let left = phi.images.iter().map(|img| a.left_mult(img)).collect();
    let right = (0..m).map(|k| a.right_mult(&a.basis(k))).collect();
    let inner_a: InnerTensor = (0..m)
        .map(|p| (0..m).map(|q| a.mul(a.star_basis(p), &a.basis(q))).collect())
        .collect();
    let mut x = Bimodule::new(phi.source.clone(), a.clone(), left, right, inner_a)?;
    if phi.is_bijective() {
        let inv = phi.inverse()?;
        let inner_b: InnerTensor = (0..m)
            .map(|p| (0..m).map(|q| inv.apply(&a.mul(&a.basis(p), a.star_basis(q)))).collect())
            .collect();
        x = x.with_inner_b(inner_b)?;
    }
    if let Some(u) = find_unit(&a) {
        let whole = CyclicStructure {
            submodules: vec![CyclicSubmodule {
                span: (0..m).map(|p| basis_vector(m, p)).collect(),
                cyclic: vec![u],
            }],
        };
        x.cyclic_p = Some(whole.clone());
        if x.inner_b.is_some() {
            x.cyclic_q = Some(whole);
        }
    }
    Ok(x.with_auto_cyclic())
}

/// Result of the full-projection construction.
#[derive(Clone, Debug)]
pub struct Corner {
    /// `𝒦Q` as a `(𝒦, Q𝒦Q)`-bimodule.
    pub bimodule: Bimodule,
    /// `𝒦 = M_L ⊗ A`.
    pub ambient: Arc<StarAlgebra>,
    /// `Q𝒦Q` in its own basis.
    pub corner: Arc<StarAlgebra>,
    /// Basis of `Q𝒦Q` in ambient coordinates.
    pub corner_basis: Vec<Vector>,
    /// Basis of `𝒦Q` in ambient coordinates.
    pub module_basis: Vec<Vector>,
    /// Rank of `span{e_i Q e_j}` (equals `dim 𝒦`).
    pub fullness_rank: usize,
    /// The `z` with invertible `⟨Qz, Qz⟩` used for the cyclic vectors, if any.
    pub cyclic_seed: Option<Vector>,
}

/// Inverse of `g` in a unital algebra, if it exists.
pub fn algebra_inverse(alg: &StarAlgebra, g: &[FracScalar]) -> Option<Vector> {
    let u = find_unit(alg)?;
    let y = solve(&alg.left_mult(g), &u).ok().flatten()?;
    (alg.mul(&y, g) == u).then_some(y)
}

/// Entry `Q_ij ∈ A` of an element of `M_L ⊗ A`.
fn entry(q: &[FracScalar], l: usize, da: usize, i: usize, j: usize) -> Vector {
    q[(i * l + j) * da..(i * l + j + 1) * da].to_vec()
}

/// Corner bimodule `𝒦Q` for a full projection `Q ∈ M_L ⊗ A`, with
/// `_𝒦⟨AQ, BQ⟩ = AQB*` and `⟨AQ, BQ⟩ = QA*BQ`.
pub fn corner_bimodule(a: Arc<StarAlgebra>, l: usize, q: &[FracScalar]) -> Result<Corner> {
    if l == 0 {
        return Err(Error::BadParams("corner needs L ≥ 1".into()));
    }
    let k = Arc::new(tensor_product(&matrix_algebra(l)?, &a));
    let dk = k.dim();
    let da = a.dim();
    if q.len() != dk {
        return Err(Error::ShapeMismatch(format!("projection must have {dk} coordinates")));
    }
    if k.star(q) != q {
        return Err(Error::NotProjection("Q* differs from Q".into()));
    }
    if k.mul(q, q) != q {
        return Err(Error::NotProjection("Q² differs from Q".into()));
    }
    let two_sided: Vec<Vector> = (0..dk)
        .flat_map(|i| (0..dk).map(move |j| (i, j)))
        .map(|(i, j)| k.mul(&k.mul(&k.basis(i), q), &k.basis(j)))
        .collect();
    let fullness_rank = rank_of(&two_sided, dk);
    if fullness_rank != dk {
        return Err(Error::NotFull {
            rank: fullness_rank,
            dim: dk,
        });
    }
    let kq: Vec<Vector> = (0..dk).map(|i| k.mul(&k.basis(i), q)).collect();
    let module_basis: Vec<Vector> = independent_subset(&kq, dk).into_iter().map(|i| kq[i].clone()).collect();
    let qkq: Vec<Vector> = (0..dk).map(|i| k.mul(q, &kq[i])).collect();
    let corner_basis: Vec<Vector> = independent_subset(&qkq, dk).into_iter().map(|i| qkq[i].clone()).collect();
    let corner = Arc::new(corner_model(&k, k.subalgebra(&corner_basis)?, &corner_basis, q));
    let m = module_basis.len();
    let coords = |v: &[FracScalar]| -> Result<Vector> {
        coordinates_in(&module_basis, v)
            .ok_or_else(|| Error::InvalidBimodule("element left 𝒦Q".into()))
    };
    let corner_coords = |v: &[FracScalar]| -> Result<Vector> {
        coordinates_in(&corner_basis, v)
            .ok_or_else(|| Error::InvalidBimodule("element left Q𝒦Q".into()))
    };
    let op = |f: &dyn Fn(&Vector) -> Vector| -> Result<Matrix> {
        let cols = module_basis.iter().map(|x| coords(&f(x))).collect::<Result<Vec<_>>>()?;
        Ok(Matrix::from_columns(m, &cols))
    };
    let left = (0..dk)
        .map(|i| op(&|x| k.mul(&k.basis(i), x)))
        .collect::<Result<Vec<_>>>()?;
    let right = corner_basis
        .iter()
        .map(|c| op(&|x| k.mul(x, c)))
        .collect::<Result<Vec<_>>>()?;
    let inner_a: InnerTensor = module_basis
        .iter()
        .map(|x| {
            module_basis
                .iter()
                .map(|y| corner_coords(&k.mul(&k.star(x), y)))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<_>>()?;
    let inner_b: InnerTensor = module_basis
        .iter()
        .map(|x| module_basis.iter().map(|y| k.mul(x, &k.star(y))).collect())
        .collect();
    let mut bimodule = Bimodule::new(k.clone(), corner.clone(), left, right, inner_a)?.with_inner_b(inner_b)?;
    // left action: 𝒦Q is cyclic with vector 1·Q
    if find_unit(&k).is_some() {
        bimodule.cyclic_q = Some(CyclicStructure {
            submodules: vec![CyclicSubmodule {
                span: (0..m).map(|p| basis_vector(m, p)).collect(),
                cyclic: vec![coords(q)?],
            }],
        });
    }
    // right action: 𝒦Q = ⊕_i F⁽ⁱ⁾Q with cyclic vectors Θ_{e_i⟨Qz,Qz⟩⁻¹, z}Q
    let mut cyclic_seed = None;
    for j in 0..l {
        for kk in 0..da {
            let z: Vec<Vector> = (0..l)
                .map(|r| if r == j { a.basis(kk) } else { zero_vector(da) })
                .collect();
            let qz: Vec<Vector> = (0..l)
                .map(|i| {
                    (0..l).fold(zero_vector(da), |acc, r| {
                        crate::linalg::vec_add(&acc, &a.mul(&entry(q, l, da, i, r), &z[r]))
                    })
                })
                .collect();
            let norm = qz
                .iter()
                .fold(zero_vector(da), |acc, v| crate::linalg::vec_add(&acc, &a.mul(&a.star(v), v)));
            let Some(inv) = algebra_inverse(&a, &norm) else {
                continue;
            };
            let mut submodules = Vec::new();
            for i in 0..l {
                // Θ_{e_i g⁻¹, z} = Σ_b E_ib ⊗ g⁻¹ z_b*
                let mut theta = zero_vector(dk);
                for (b_idx, zb) in z.iter().enumerate() {
                    let block = a.mul(&inv, &a.star(zb));
                    let e = basis_vector(l * l, i * l + b_idx);
                    theta = crate::linalg::vec_add(&theta, &vec_kron(&e, &block));
                }
                let omega = k.mul(&theta, q);
                let row: Vec<Vector> = (0..l)
                    .flat_map(|c| (0..da).map(move |t| (c, t)))
                    .map(|(c, t)| {
                        let e = vec_kron(&basis_vector(l * l, i * l + c), &a.basis(t));
                        k.mul(&e, q)
                    })
                    .collect();
                let span = row.iter().map(|v| coords(v)).collect::<Result<Vec<_>>>()?;
                submodules.push(CyclicSubmodule {
                    span,
                    cyclic: vec![coords(&omega)?],
                });
            }
            bimodule.cyclic_p = Some(CyclicStructure { submodules });
            cyclic_seed = Some(z.concat());
            break;
        }
        if cyclic_seed.is_some() {
            break;
        }
    }
    let bimodule = bimodule.with_auto_cyclic();
    Ok(Corner {
        bimodule,
        ambient: k,
        corner,
        corner_basis,
        module_basis,
        fullness_rank,
        cyclic_seed,
    })
}

/// Attach a compressed matrix model to the corner when `Q` acts in the
/// ambient model as a coordinate projection.
fn corner_model(k: &StarAlgebra, corner: StarAlgebra, basis: &[Vector], q: &[FracScalar]) -> StarAlgebra {
    let Some(model) = k.model() else {
        return corner;
    };
    let image = model.image(q);
    let n = image.rows();
    let is_diag01 = (0..n).all(|i| {
        (0..n).all(|j| {
            let v = &image[(i, j)];
            if i != j {
                v.is_zero()
            } else {
                v.is_zero() || v.is_one()
            }
        })
    });
    if !is_diag01 || model.blocks.len() != 1 {
        return corner;
    }
    let support: Vec<usize> = (0..n).filter(|&i| image[(i, i)].is_one()).collect();
    let images = basis
        .iter()
        .map(|v| model.image(v).submatrix(&support, &support))
        .collect();
    let compressed = MatrixModel {
        blocks: vec![support.len()],
        images,
    };
    let s = support.len();
    match corner.clone().with_model(compressed) {
        Ok(c) => c.with_kind(AlgebraKind::Matrix(s)),
        Err(_) => corner,
    }
}
