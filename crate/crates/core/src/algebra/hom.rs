use std::sync::Arc;

use super::star_algebra::StarAlgebra;
use crate::error::{Error, Result};
use crate::linalg::{combine, kernel_basis, Matrix, Vector};
use crate::rings::FracScalar;

/// Linear map `Φ: B → A` given by the images of the basis of `B`, verified to
/// be a *-homomorphism on construction.
#[derive(Clone, Debug)]
pub struct StarHomomorphism {
    pub source: Arc<StarAlgebra>,
    pub target: Arc<StarAlgebra>,
    pub images: Vec<Vector>,
}

impl StarHomomorphism {
    pub fn new(source: Arc<StarAlgebra>, target: Arc<StarAlgebra>, images: Vec<Vector>) -> Result<Self> {
        if images.len() != source.dim() || images.iter().any(|v| v.len() != target.dim()) {
            return Err(Error::NotStarHomomorphism("image count or length mismatch".into()));
        }
        let phi = StarHomomorphism {
            source,
            target,
            images,
        };
        phi.verify()?;
        Ok(phi)
    }

    pub fn identity(alg: Arc<StarAlgebra>) -> Self {
        let images = (0..alg.dim()).map(|i| alg.basis(i)).collect();
        StarHomomorphism {
            source: alg.clone(),
            target: alg,
            images,
        }
    }

    pub fn apply(&self, b: &[FracScalar]) -> Vector {
        combine(b, &self.images, self.target.dim())
    }

    /// Matrix of `Φ` (columns are images of basis elements).
    pub fn matrix(&self) -> Matrix {
        Matrix::from_columns(self.target.dim(), &self.images)
    }

    fn verify(&self) -> Result<()> {
        let (b, a) = (&self.source, &self.target);
        for i in 0..b.dim() {
            if self.apply(b.star_basis(i)) != a.star(&self.images[i]) {
                return Err(Error::NotStarHomomorphism(format!(
                    "Φ(e{i}*) ≠ Φ(e{i})* for basis element {}",
                    b.labels()[i]
                )));
            }
            for j in 0..b.dim() {
                if self.apply(&b.mul_basis(i, j)) != a.mul(&self.images[i], &self.images[j]) {
                    return Err(Error::NotStarHomomorphism(format!(
                        "Φ(e{i} e{j}) ≠ Φ(e{i}) Φ(e{j})"
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn is_injective(&self) -> bool {
        kernel_basis(&self.matrix()).is_empty()
    }

    pub fn is_bijective(&self) -> bool {
        self.source.dim() == self.target.dim() && self.is_injective()
    }

    /// Inverse map, when `Φ` is bijective.
    pub fn inverse(&self) -> Result<StarHomomorphism> {
        if !self.is_bijective() {
            return Err(Error::NotStarHomomorphism("map is not bijective".into()));
        }
        let inv = crate::linalg::inverse(&self.matrix())?;
        Ok(StarHomomorphism {
            source: self.target.clone(),
            target: self.source.clone(),
            images: inv.column_vectors(),
        })
    }

    /// `λ ↦ 0` on both algebras and on the map.
    pub fn classical_limit(&self) -> Result<StarHomomorphism> {
        let source = Arc::new(self.source.classical_limit()?);
        let target = Arc::new(self.target.classical_limit()?);
        let images = self
            .images
            .iter()
            .map(|v| v.iter().map(FracScalar::classical_limit).collect())
            .collect::<Result<_>>()?;
        StarHomomorphism::new(source, target, images)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::builtin::{grassmann, matrix_algebra, scalars};

    #[test]
    fn unital_embedding() {
        let m2 = Arc::new(matrix_algebra(2).unwrap());
        let c = Arc::new(scalars());
        let unit = crate::linalg::vec_add(&m2.basis(0), &m2.basis(3));
        let phi = StarHomomorphism::new(c, m2, vec![unit]).unwrap();
        assert!(phi.is_injective());
        assert!(!phi.is_bijective());
    }

    #[test]
    fn non_hermitian_image_rejected() {
        let g = Arc::new(grassmann(1).unwrap());
        let m2 = Arc::new(matrix_algebra(2).unwrap());
        // 1 ↦ 1, e ↦ E12 (not self-adjoint)
        let unit = crate::linalg::vec_add(&m2.basis(0), &m2.basis(3));
        let err = StarHomomorphism::new(g, m2.clone(), vec![unit, m2.basis(1)]).unwrap_err();
        assert!(matches!(err, Error::NotStarHomomorphism(_)));
    }
}
