//! Built-in algebra families and algebra-level constructions.

use super::star_algebra::{AlgebraKind, MatrixModel, StarAlgebra};
use crate::error::{Error, Result};
use crate::linalg::{basis_vector, vec_kron, zero_vector, Matrix, Vector};
use crate::rings::FracScalar;

/// `M_n(C)` with matrix units `E_ij` at index `i·n + j`.
pub fn matrix_algebra(n: usize) -> Result<StarAlgebra> {
    if n == 0 {
        return Err(Error::BadParams("matrix algebra needs n ≥ 1".into()));
    }
    let dim = n * n;
    let alg = StarAlgebra::from_fn(
        dim,
        |a, b| {
            let (i, j) = (a / n, a % n);
            let (k, l) = (b / n, b % n);
            if j == k {
                basis_vector(dim, i * n + l)
            } else {
                zero_vector(dim)
            }
        },
        |a| basis_vector(dim, (a % n) * n + a / n),
    )
    .with_labels(
        (0..dim)
            .map(|a| format!("E{}{}", a / n + 1, a % n + 1))
            .collect(),
    )
    .with_kind(AlgebraKind::Matrix(n));
    let images = (0..dim).map(|a| Matrix::unit(n, n, a / n, a % n)).collect();
    alg.with_model(MatrixModel {
        blocks: vec![n],
        images,
    })
}

/// The scalars `C` as a one-dimensional algebra (`M_1`).
pub fn scalars() -> StarAlgebra {
    matrix_algebra(1)
        .expect("n = 1")
        .with_labels(vec!["1".into()])
}

/// Monomials `e_S` of the Grassmann algebra on `n` generators, in graded
/// order: `1, e1, …, en, e1∧e2, …`.
pub fn grassmann_monomials(n: usize) -> Vec<Vec<usize>> {
    let mut subsets: Vec<Vec<usize>> = (0u32..(1 << n))
        .map(|mask| (0..n).filter(|i| mask & (1 << i) != 0).collect())
        .collect();
    subsets.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    subsets
}

/// Exterior algebra `Λ(Cⁿ)` with `e_i* = e_i`, so that
/// `e_S* = (−1)^{r(r−1)/2} e_S` for `|S| = r`.
pub fn grassmann(n: usize) -> Result<StarAlgebra> {
    if n == 0 || n > 6 {
        return Err(Error::BadParams("grassmann algebra needs 1 ≤ n ≤ 6".into()));
    }
    let monomials = grassmann_monomials(n);
    let dim = monomials.len();
    let index_of = |s: &[usize]| monomials.iter().position(|m| m == s).expect("monomial");
    let product = |a: usize, b: usize| -> Vector {
        let (s, t) = (&monomials[a], &monomials[b]);
        let mut out = zero_vector(dim);
        if s.iter().any(|x| t.contains(x)) {
            return out;
        }
        let inversions = s.iter().map(|x| t.iter().filter(|y| *y < x).count()).sum::<usize>();
        let mut u: Vec<usize> = s.iter().chain(t).copied().collect();
        u.sort_unstable();
        out[index_of(&u)] = FracScalar::from_int(if inversions % 2 == 0 { 1 } else { -1 });
        out
    };
    let star = |a: usize| -> Vector {
        let r = monomials[a].len();
        let mut out = zero_vector(dim);
        out[a] = FracScalar::from_int(if (r * r.saturating_sub(1) / 2) % 2 == 0 { 1 } else { -1 });
        out
    };
    let labels = monomials
        .iter()
        .map(|m| {
            if m.is_empty() {
                "1".to_string()
            } else {
                m.iter().map(|i| format!("e{}", i + 1)).collect::<Vec<_>>().join("∧")
            }
        })
        .collect();
    Ok(StarAlgebra::from_fn(dim, product, star)
        .with_labels(labels)
        .with_kind(AlgebraKind::Grassmann(n)))
}

/// `A₁ ⊗ A₂` with basis `e_i ⊗ f_k` at index `i·n₂ + k` and
/// `(a ⊗ b)* = a* ⊗ b*`.
pub fn tensor_product(a1: &StarAlgebra, a2: &StarAlgebra) -> StarAlgebra {
    let n2 = a2.dim();
    let dim = a1.dim() * n2;
    let alg = StarAlgebra::from_fn(
        dim,
        |x, y| vec_kron(&a1.mul_basis(x / n2, y / n2), &a2.mul_basis(x % n2, y % n2)),
        |x| vec_kron(a1.star_basis(x / n2), a2.star_basis(x % n2)),
    );
    let labels = (0..dim)
        .map(|x| format!("{}⊗{}", a1.labels()[x / n2], a2.labels()[x % n2]))
        .collect();
    let alg = alg.with_labels(labels).with_kind(AlgebraKind::Tensor);
    match (a1.model(), a2.model()) {
        (Some(m1), Some(m2)) if m1.blocks.len() == 1 && m2.blocks.len() == 1 => {
            let images = (0..dim)
                .map(|x| m1.images[x / n2].kron(&m2.images[x % n2]))
                .collect();
            let model = MatrixModel {
                blocks: vec![m1.blocks[0] * m2.blocks[0]],
                images,
            };
            alg.clone().with_model(model).unwrap_or(alg)
        }
        _ => alg,
    }
}

/// `A₁ ⊕ A₂` with the basis of `A₁` first.
pub fn direct_sum(a1: &StarAlgebra, a2: &StarAlgebra) -> StarAlgebra {
    let (n1, n2) = (a1.dim(), a2.dim());
    let dim = n1 + n2;
    let embed = |v: Vector, first: bool| -> Vector {
        let mut out = zero_vector(dim);
        let off = if first { 0 } else { n1 };
        for (k, x) in v.into_iter().enumerate() {
            out[off + k] = x;
        }
        out
    };
    let alg = StarAlgebra::from_fn(
        dim,
        |x, y| match (x < n1, y < n1) {
            (true, true) => embed(a1.mul_basis(x, y), true),
            (false, false) => embed(a2.mul_basis(x - n1, y - n1), false),
            _ => zero_vector(dim),
        },
        |x| {
            if x < n1 {
                embed(a1.star_basis(x).clone(), true)
            } else {
                embed(a2.star_basis(x - n1).clone(), false)
            }
        },
    );
    let labels = a1
        .labels()
        .iter()
        .map(|l| format!("{l}⊕0"))
        .chain(a2.labels().iter().map(|l| format!("0⊕{l}")))
        .collect();
    let alg = alg.with_labels(labels);
    match (a1.model(), a2.model()) {
        (Some(m1), Some(m2)) => {
            let z1 = Matrix::zeros(m1.size(), m1.size());
            let z2 = Matrix::zeros(m2.size(), m2.size());
            let images = m1
                .images
                .iter()
                .map(|m| Matrix::direct_sum(&[m, &z2]))
                .chain(m2.images.iter().map(|m| Matrix::direct_sum(&[&z1, m])))
                .collect();
            let model = MatrixModel {
                blocks: m1.blocks.iter().chain(&m2.blocks).copied().collect(),
                images,
            };
            alg.clone().with_model(model).unwrap_or(alg)
        }
        _ => alg,
    }
}

/// Element of `M_n` with coefficient vector read off a matrix.
pub fn matrix_element(m: &Matrix) -> Vector {
    m.entries().to_vec()
}
