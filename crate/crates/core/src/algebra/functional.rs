use super::star_algebra::StarAlgebra;
use crate::error::{Error, Result};
use crate::linalg::{dot, psd_decide, vec_kron, Matrix, PsdCertificate, Vector};
use crate::rings::FracScalar;

/// Linear functional given by its values on the basis.
#[derive(Clone, Debug, PartialEq)]
pub struct LinearFunctional {
    pub values: Vector,
}

impl LinearFunctional {
    pub fn new(values: Vector) -> Self {
        LinearFunctional { values }
    }

    pub fn zero(dim: usize) -> Self {
        LinearFunctional {
            values: vec![FracScalar::zero(); dim],
        }
    }

    pub fn eval(&self, a: &[FracScalar]) -> FracScalar {
        self.values
            .iter()
            .zip(a)
            .filter(|(w, x)| !w.is_zero() && !x.is_zero())
            .map(|(w, x)| w * x)
            .sum()
    }

    /// `G_ij = ω(e_i* e_j)`, so that `ω(a*a) = v^† G v` for `a = Σ v_i e_i`.
    pub fn gram(&self, alg: &StarAlgebra) -> Matrix {
        let n = alg.dim();
        Matrix::from_fn(n, n, |i, j| self.eval(&alg.mul(alg.star_basis(i), &alg.basis(j))))
    }

    /// `ω₁ ⊗ ω₂` on the tensor product algebra.
    pub fn tensor(&self, other: &LinearFunctional) -> LinearFunctional {
        LinearFunctional::new(vec_kron(&self.values, &other.values))
    }

    /// `ω_C : a ↦ ω(C* a C)`.
    pub fn conjugated(&self, alg: &StarAlgebra, c: &[FracScalar]) -> LinearFunctional {
        let cs = alg.star(c);
        LinearFunctional::new(
            (0..alg.dim())
                .map(|i| self.eval(&alg.mul(&alg.mul(&cs, &alg.basis(i)), c)))
                .collect(),
        )
    }

    /// Entrywise `λ ↦ 0`.
    pub fn classical_limit(&self) -> Result<LinearFunctional> {
        Ok(LinearFunctional::new(
            self.values
                .iter()
                .map(FracScalar::classical_limit)
                .collect::<Result<_>>()?,
        ))
    }
}

/// Exact decision whether `ω(a*a) ≥ 0` for all `a`.
pub fn functional_positivity(alg: &StarAlgebra, omega: &LinearFunctional) -> Result<PsdCertificate> {
    if omega.values.len() != alg.dim() {
        return Err(Error::ShapeMismatch("functional length differs from algebra dimension".into()));
    }
    psd_decide(&omega.gram(alg))
}

/// `ω(A) = tr(ϱA)` on the matrix algebra `M_n`, i.e. `ω(E_ij) = ϱ_ji`.
pub fn density_functional(alg: &StarAlgebra, rho: &Matrix) -> Result<LinearFunctional> {
    let n = rho.rows();
    if !rho.is_square() || n * n != alg.dim() {
        return Err(Error::ShapeMismatch(format!(
            "density matrix {}x{} for algebra of dimension {}",
            rho.rows(),
            rho.cols(),
            alg.dim()
        )));
    }
    Ok(LinearFunctional::new(
        (0..n * n).map(|a| rho[(a % n, a / n)].clone()).collect(),
    ))
}

/// Vector-state functional `a ↦ ⟨v, π(a) v⟩_G` of a representation.
pub fn vector_state(ops: &[Matrix], gram: &Matrix, v: &[FracScalar]) -> LinearFunctional {
    let gv: Vector = gram.apply(v);
    LinearFunctional::new(ops.iter().map(|op| dot(&gv, &op.apply(v))).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::builtin::{grassmann, matrix_algebra};
    use crate::linalg::Verdict;

    #[test]
    fn trace_is_positive() {
        let m2 = matrix_algebra(2).unwrap();
        let tr = density_functional(&m2, &Matrix::identity(2)).unwrap();
        assert_eq!(functional_positivity(&m2, &tr).unwrap().verdict, Verdict::Positive);
    }

    #[test]
    fn grassmann_functional_is_not_positive() {
        let g = grassmann(1).unwrap();
        let omega = LinearFunctional::new(vec![FracScalar::one(), FracScalar::one()]);
        assert_eq!(omega.gram(&g), Matrix::from_ints(&[&[1, 1], &[1, 0]]));
        let cert = functional_positivity(&g, &omega).unwrap();
        assert_eq!(cert.verdict, Verdict::NotPositive);
        cert.replay(&omega.gram(&g)).unwrap();
    }

    #[test]
    fn zero_functional_is_positive() {
        let g = grassmann(2).unwrap();
        assert!(functional_positivity(&g, &LinearFunctional::zero(g.dim())).unwrap().is_positive());
    }

    #[test]
    fn density_values() {
        let m2 = matrix_algebra(2).unwrap();
        let omega = density_functional(&m2, &Matrix::from_ints(&[&[1, 0], &[0, 0]])).unwrap();
        assert_eq!(omega.eval(&m2.basis(0)), FracScalar::one());
        assert_eq!(omega.eval(&m2.basis(3)), FracScalar::zero());
        let swap = density_functional(&m2, &Matrix::from_ints(&[&[0, 1], &[1, 0]])).unwrap();
        assert!(!functional_positivity(&m2, &swap).unwrap().is_positive());
        assert!(density_functional(&m2, &Matrix::identity(3)).is_err());
    }
}
