//! Classical limits `λ ↦ 0` of pre-Hilbert modules, operators,
//! representations and bimodules over `ℚ[λ](i)`, and their compatibility
//! with induction.

mod deformed;
mod limit;

pub use deformed::{
    check_deformed_homomorphism, deformed_homomorphism_bimodule, naturality_check, rigged_isomorphic,
    rotation_conjugation, DeformedHomomorphismComparison, NaturalityResult,
};
pub use limit::{
    cl_bimodule, cl_operator, cl_prehilbert, cl_representation, positive_lift_check, ClassicalBimodule,
    LiftOutcome, LimitMap,
};

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::algebra::{matrix_algebra, scalars, LinearFunctional, StarAlgebra};
    use crate::bimodule::{free_module_bimodule, Bimodule, Level, ValidationOptions};
    use crate::error::Error;
    use crate::linalg::{basis_vector, Matrix};
    use crate::prehilbert::{defining_representation, InnerProductModule, Representation};
    use crate::rings::FracScalar;

    fn lam() -> FracScalar {
        FracScalar::lambda()
    }

    #[test]
    fn limits_of_modules() {
        let one = FracScalar::one();
        let h = InnerProductModule::new(Matrix::diag(&[one.clone(), lam()])).unwrap();
        let (h0, map) = cl_prehilbert(&h).unwrap();
        assert_eq!(h0.dim(), 1);
        assert_eq!(map.limit_kernel(), &[basis_vector(2, 1)]);
        let (h0, _) = cl_prehilbert(&InnerProductModule::standard(3)).unwrap();
        assert_eq!(h0.gram(), &Matrix::identity(3));
        let scaled = InnerProductModule::new(Matrix::identity(2).scale(&lam())).unwrap();
        assert_eq!(cl_prehilbert(&scaled).unwrap().0.dim(), 0);
    }

    #[test]
    fn limits_of_operators() {
        let (_, map) = cl_prehilbert(&InnerProductModule::standard(2)).unwrap();
        assert!(cl_operator(&map, &Matrix::identity(2)).unwrap().is_identity());
        assert!(cl_operator(&map, &Matrix::identity(2).scale(&lam())).unwrap().is_zero());
        let h = InnerProductModule::new(Matrix::diag(&[FracScalar::one(), lam()])).unwrap();
        let (_, map) = cl_prehilbert(&h).unwrap();
        assert!(matches!(
            cl_operator(&map, &Matrix::unit(2, 2, 0, 1)),
            Err(Error::NotAdjointable(_))
        ));
    }

    #[test]
    fn defining_rep_limit() {
        let def = defining_representation(Arc::new(matrix_algebra(2).unwrap())).unwrap();
        let (r0, _) = cl_representation(&def).unwrap();
        assert_eq!(r0.ops, def.ops);
        assert!(r0.validate().passed());
    }

    #[test]
    fn scaled_summand_drops_out() {
        let c = Arc::new(scalars());
        let h = vec![
            vec![vec![FracScalar::one()], vec![FracScalar::zero()]],
            vec![vec![FracScalar::zero()], vec![lam()]],
        ];
        let x = Bimodule::new(c.clone(), c, vec![Matrix::identity(2)], vec![Matrix::identity(2)], h.clone())
            .unwrap()
            .with_inner_b(h)
            .unwrap();
        let cl = cl_bimodule(&x).unwrap();
        assert_eq!(cl.bimodule.dim, 1);
        assert_eq!(cl.radical_a, vec![basis_vector(2, 1)]);
        assert_eq!(cl.radicals_agree, Some(true));
        let free = free_module_bimodule(Arc::new(scalars()), 2, None).unwrap();
        let cl = cl_bimodule(&free).unwrap();
        assert_eq!(cl.bimodule.inner_a, free.inner_a);
        assert!(cl.bimodule.validate(&ValidationOptions::level(Level::Equivalence)).passed());
    }

    fn scalar_rep(gram: Matrix) -> Representation {
        let n = gram.rows();
        Representation::new(Arc::new(scalars()), InnerProductModule::new(gram).unwrap(), vec![Matrix::identity(n)])
            .unwrap()
    }

    #[test]
    fn naturality_with_deformed_gram() {
        let x = free_module_bimodule(Arc::new(scalars()), 2, None).unwrap();
        let one_plus = &FracScalar::one() + &lam();
        let rep = scalar_rep(Matrix::diag(&[FracScalar::one(), one_plus]));
        let nat = naturality_check(&x, &rep).unwrap();
        assert_eq!(nat.unitary.matrix.rows(), 4);
        assert!(nat.unitary.unitary);
        let rep = scalar_rep(Matrix::diag(&[FracScalar::one(), lam()]));
        let nat = naturality_check(&x, &rep).unwrap();
        assert_eq!(nat.limit_of_induced.dim(), 2);
        assert!(nat.unitary.unitary);
    }

    #[test]
    fn rotated_homomorphism_bimodule() {
        let (m2, images) = rotation_conjugation().unwrap();
        let cmp = deformed_homomorphism_bimodule(m2.clone(), m2.clone(), images.clone()).unwrap();
        assert_eq!(cmp.isomorphic, Ok(()));
        assert!(cmp.homomorphism.is_bijective());
        let cl = &cmp.limit.bimodule;
        assert!(cl.validate(&ValidationOptions::level(Level::Equivalence)).passed());
        let def = defining_representation(m2.clone()).unwrap();
        assert!(naturality_check(&cmp.bimodule, &def).unwrap().unitary.unitary);
        let mut broken = images;
        broken[1][0] = &broken[1][0] + &lam();
        match deformed_homomorphism_bimodule(m2.clone(), m2, broken) {
            Err(Error::NotStarHomomorphism(msg)) => assert!(msg.contains("order λ^1"), "{msg}"),
            other => panic!("{other:?}"),
        }
    }

    /// `{1, e}` with `e·e = λ·1`, `e* = e`.
    fn lambda_square() -> StarAlgebra {
        StarAlgebra::from_fn(
            2,
            |i, j| match (i, j) {
                (0, k) | (k, 0) => basis_vector(2, k),
                _ => vec![lam(), FracScalar::zero()],
            },
            |i| basis_vector(2, i),
        )
    }

    #[test]
    fn constant_lifts() {
        let m2 = matrix_algebra(2).unwrap();
        let trace = crate::algebra::density_functional(&m2, &Matrix::identity(2)).unwrap();
        assert!(matches!(positive_lift_check(&m2, &trace), Ok(LiftOutcome::Lifted { .. })));
        assert!(matches!(
            positive_lift_check(&m2, &LinearFunctional::zero(4)),
            Ok(LiftOutcome::Lifted { .. })
        ));
        let omega = LinearFunctional::new(vec![FracScalar::one(), FracScalar::one()]);
        assert!(matches!(
            positive_lift_check(&lambda_square(), &omega),
            Err(Error::NotPositiveFunctional { .. })
        ));
        let vacuum = LinearFunctional::new(vec![FracScalar::one(), FracScalar::zero()]);
        assert!(matches!(positive_lift_check(&lambda_square(), &vacuum), Ok(LiftOutcome::Lifted { .. })));
    }
}
