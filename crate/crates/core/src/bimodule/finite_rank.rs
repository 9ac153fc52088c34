//! Rank-one operators `Θ_{x,y}(z) = x·⟨y,z⟩_A` and the algebra they span.

use std::sync::Arc;

use super::core::Bimodule;
use crate::algebra::{AlgebraKind, MatrixModel, StarAlgebra, StarHomomorphism};
use crate::error::{Error, Result};
use crate::linalg::{basis_vector, independent_subset, solve_matrix, Matrix, Vector};
use crate::rings::FracScalar;

/// `Θ_{x,y}` as an operator on the module.
pub fn theta(x: &Bimodule, u: &[FracScalar], v: &[FracScalar]) -> Matrix {
    let m = x.dim;
    let cols: Vec<Vector> = (0..m)
        .map(|s| {
            let z = basis_vector(m, s);
            x.right_op(&x.inner_a(v, &z)).apply(u)
        })
        .collect();
    Matrix::from_columns(m, &cols)
}

/// The *-algebra `𝒦(X_A)` with `Θ_{x,y}* = Θ_{y,x}`.
#[derive(Clone, Debug)]
pub struct FiniteRankAlgebra {
    pub algebra: Arc<StarAlgebra>,
    /// Basis pairs `(p, q)`: basis element `k` is `Θ_{e_p, e_q}`.
    pub generators: Vec<(usize, usize)>,
    pub operators: Vec<Matrix>,
    /// `L_B: B → 𝒦`, when it is a *-homomorphism.
    pub left_map: Option<StarHomomorphism>,
}

impl FiniteRankAlgebra {
    /// `L_B` is a *-isomorphism onto `𝒦`.
    pub fn left_is_isomorphism(&self) -> bool {
        self.left_map.as_ref().is_some_and(StarHomomorphism::is_bijective)
    }

    /// Coordinates of an operator in the span, if it lies there.
    pub fn coordinates(&self, op: &Matrix) -> Option<Vector> {
        let cols: Vec<Vector> = self.operators.iter().map(|o| o.entries().to_vec()).collect();
        let len = op.rows() * op.cols();
        let basis = Matrix::from_columns(len, &cols);
        let target = Matrix::from_columns(len, &[op.entries().to_vec()]);
        solve_matrix(&basis, &target).ok().flatten().map(|c| c.column(0))
    }
}

pub fn finite_rank_algebra(x: &Bimodule) -> Result<FiniteRankAlgebra> {
    let m = x.dim;
    let pairs: Vec<(usize, usize)> = (0..m).flat_map(|p| (0..m).map(move |q| (p, q))).collect();
    let all: Vec<Matrix> = pairs
        .iter()
        .map(|&(p, q)| theta(x, &basis_vector(m, p), &basis_vector(m, q)))
        .collect();
    let flat: Vec<Vector> = all.iter().map(|t| t.entries().to_vec()).collect();
    let keep = independent_subset(&flat, m * m);
    let generators: Vec<(usize, usize)> = keep.iter().map(|&k| pairs[k]).collect();
    let operators: Vec<Matrix> = keep.iter().map(|&k| all[k].clone()).collect();
    // Θ_{p,q}* = Θ_{q,p}; every basis operator is one of the generators
    let adjoint = |t: &Matrix| -> Matrix {
        let k = operators.iter().position(|o| o == t).expect("basis operator");
        let (p, q) = generators[k];
        all[q * m + p].clone()
    };
    let mut algebra = StarAlgebra::from_operator_basis(&operators, adjoint)?;
    let labels = generators.iter().map(|(p, q)| format!("Θ{}{}", p + 1, q + 1)).collect();
    algebra = algebra.with_labels(labels);
    // with an orthonormal scalar-valued product, Θ_{p,q} are matrix units
    if x.a.dim() == 1 && x.a.mul_basis(0, 0) == basis_vector(1, 0) && generators.len() == m * m {
        let orthonormal = (0..m).all(|p| {
            (0..m).all(|q| {
                x.inner_a[p][q][0] == if p == q { FracScalar::one() } else { FracScalar::zero() }
            })
        });
        if orthonormal {
            let model = MatrixModel {
                blocks: vec![m],
                images: operators.clone(),
            };
            algebra = algebra
                .clone()
                .with_model(model)
                .map(|a| a.with_kind(AlgebraKind::Matrix(m)))
                .unwrap_or(algebra);
        }
    }
    let algebra = Arc::new(algebra);
    let mut frk = FiniteRankAlgebra {
        algebra: algebra.clone(),
        generators,
        operators,
        left_map: None,
    };
    let images: Option<Vec<Vector>> = x.left.iter().map(|l| frk.coordinates(l)).collect();
    if let Some(images) = images {
        frk.left_map = StarHomomorphism::new(x.b.clone(), algebra, images).ok();
    }
    if frk.algebra.dim() == 0 && m > 0 {
        return Err(Error::DegenerateRiggedModule("all rank-one operators vanish".into()));
    }
    Ok(frk)
}
