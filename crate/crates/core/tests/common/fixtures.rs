//! Named bimodules shared by the property suites and the acceptance run.

use std::sync::Arc;

use starmorita::algebra::builtin::matrix_element;
use starmorita::algebra::{grassmann, matrix_algebra, scalars};
use starmorita::bimodule::{corner_bimodule, free_module_bimodule, Bimodule, InnerTensor, Level, ValidationOptions};
use starmorita::linalg::{Matrix, Vector};
use starmorita::rings::FracScalar;

/// Equivalence bimodules between matrix-kind algebras.
pub fn equivalence_bimodules() -> Vec<(String, Bimodule)> {
    let mut out = Vec::new();
    for n in 1..=3 {
        out.push((format!("free(C,{n})"), free_module_bimodule(Arc::new(scalars()), n, None).unwrap()));
    }
    let m2 = Arc::new(matrix_algebra(2).unwrap());
    out.push(("free(M2,1)".into(), free_module_bimodule(m2, 1, None).unwrap()));
    let q = matrix_element(&Matrix::diag(&[FracScalar::one(), FracScalar::one(), FracScalar::zero()]));
    out.push(("corner(3,diag(1,1,0))".into(), corner_bimodule(Arc::new(scalars()), 3, &q).unwrap().bimodule));
    out
}

fn tensor(m: usize, f: impl Fn(usize, usize) -> Vector) -> InnerTensor {
    (0..m).map(|p| (0..m).map(|q| f(p, q)).collect()).collect()
}

fn unit_coefficient(v: &[FracScalar]) -> Vector {
    vec![v[0].clone()]
}

/// One sum-of-squares witness `⟨e_p, e_p⟩ = s_p* s_p` per basis vector.
fn squares(m: usize, s: impl Fn(usize) -> Vector) -> Option<Vec<Vec<(FracScalar, Vector)>>> {
    Some((0..m).map(|p| vec![(FracScalar::one(), s(p))]).collect())
}

/// Hand-built bimodules claiming a `ℂ`–`Λ(ℂⁿ)` equivalence, each with the
/// positivity evidence it would need on the Grassmann side.
pub fn grassmann_candidates(n: usize) -> Vec<(String, Bimodule, ValidationOptions)> {
    let g = Arc::new(grassmann(n).unwrap());
    let c = Arc::new(scalars());
    let d = g.dim();
    let mut out = Vec::new();

    // X = Λ with ⟨x,y⟩ = x*y and _ℂ⟨x,y⟩ = coefficient of 1 in x y*
    let x = Bimodule::new(
        c.clone(),
        g.clone(),
        vec![Matrix::identity(d)],
        (0..d).map(|k| g.right_mult(&g.basis(k))).collect(),
        tensor(d, |p, q| g.mul(&g.star(&g.basis(p)), &g.basis(q))),
    )
    .unwrap()
    .with_inner_b(tensor(d, |p, q| unit_coefficient(&g.mul(&g.basis(p), &g.star(&g.basis(q))))))
    .unwrap()
    .with_auto_cyclic();
    let opts = ValidationOptions {
        squares_a: squares(d, |p| g.basis(p)),
        ..ValidationOptions::level(Level::Equivalence)
    };
    out.push(("regular".to_string(), x, opts));

    // X = ℂ through the augmentation Λ → ℂ, ⟨x,y⟩ = x̄y·1
    let x = Bimodule::new(
        c.clone(),
        g.clone(),
        vec![Matrix::identity(1)],
        (0..d).map(|k| Matrix::identity(1).scale(&g.basis(k)[0])).collect(),
        vec![vec![g.basis(0)]],
    )
    .unwrap()
    .with_inner_b(vec![vec![vec![FracScalar::one()]]])
    .unwrap()
    .with_auto_cyclic();
    let opts = ValidationOptions {
        squares_a: squares(1, |_| g.basis(0)),
        ..ValidationOptions::level(Level::Equivalence)
    };
    out.push(("augmentation".to_string(), x, opts));

    // the reverse direction: Λ as a Λ–ℂ bimodule with _Λ⟨x,y⟩ = x y*
    let x = Bimodule::new(
        g.clone(),
        c,
        (0..d).map(|k| g.left_mult(&g.basis(k))).collect(),
        vec![Matrix::identity(d)],
        tensor(d, |p, q| unit_coefficient(&g.mul(&g.star(&g.basis(p)), &g.basis(q)))),
    )
    .unwrap()
    .with_inner_b(tensor(d, |p, q| g.mul(&g.basis(p), &g.star(&g.basis(q)))))
    .unwrap()
    .with_auto_cyclic();
    let opts = ValidationOptions {
        squares_b: squares(d, |p| g.star(&g.basis(p))),
        ..ValidationOptions::level(Level::Equivalence)
    };
    out.push(("conjugate-regular".to_string(), x, opts));
    out
}
