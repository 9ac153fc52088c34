mod common;

use std::sync::Arc;

use common::*;
use proptest::prelude::*;
use starmorita::algebra::{
    density_functional, direct_sum, functional_positivity, grassmann, matrix_algebra, scalars, tensor_product,
    verify_sum_of_squares, LinearFunctional, StarAlgebra,
};
use starmorita::linalg::{Matrix, Vector};
use starmorita::rings::FracScalar;

fn m2() -> Arc<StarAlgebra> {
    Arc::new(matrix_algebra(2).unwrap())
}

fn state(rho: &Matrix) -> LinearFunctional {
    density_functional(&m2(), rho).unwrap()
}

fn element() -> impl Strategy<Value = Vector> {
    vector_of(4, scalar())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn positive_functionals_are_real(rho in psd(2, scalar()), a in element()) {
        let alg = m2();
        let omega = state(&rho);
        prop_assert!(functional_positivity(&alg, &omega).unwrap().is_positive());
        prop_assert_eq!(omega.eval(&alg.star(&a)), omega.eval(&a).conj());
    }

    #[test]
    fn functional_cauchy_schwarz(rho in psd(2, scalar()), a in element(), b in element()) {
        let alg = m2();
        let omega = state(&rho);
        let ab = omega.eval(&alg.mul(&alg.star(&a), &b));
        let aa = omega.eval(&alg.mul(&alg.star(&a), &a));
        let bb = omega.eval(&alg.mul(&alg.star(&b), &b));
        prop_assert!((&(&aa * &bb) - &ab.norm_sq()).re().sign().is_non_negative());
    }

    #[test]
    fn tensor_functionals_are_positive(r1 in psd(2, gaussian_rational()), r2 in psd(2, scalar())) {
        let alg = tensor_product(&m2(), &m2());
        let omega = state(&r1).tensor(&state(&r2));
        prop_assert!(functional_positivity(&alg, &omega).unwrap().is_positive());
    }

    #[test]
    fn conjugated_functionals_are_positive(rho in psd(2, scalar()), c in element()) {
        let alg = m2();
        let omega = state(&rho).conjugated(&alg, &c);
        prop_assert!(functional_positivity(&alg, &omega).unwrap().is_positive());
    }

    #[test]
    fn sum_of_squares_witnesses_replay(
        terms in prop::collection::vec(((1i64..=5, 1i64..=3), element()), 1..=3)
    ) {
        let alg = m2();
        let terms: Vec<(FracScalar, Vector)> =
            terms.into_iter().map(|((p, q), x)| (FracScalar::from_ratio(p, q), x)).collect();
        let mut a = alg.zero();
        for (b, x) in &terms {
            let sq = alg.mul(&alg.star(x), x);
            a = a.iter().zip(&sq).map(|(u, v)| u + &(b * v)).collect();
        }
        prop_assert!(verify_sum_of_squares(&alg, &a, &terms).is_ok());
        let mut off = a.clone();
        off[1] = &off[1] + &FracScalar::one();
        prop_assert!(verify_sum_of_squares(&alg, &off, &terms).is_err());
    }

    #[test]
    fn star_is_an_antilinear_anti_automorphism(a in element(), b in element(), c in scalar()) {
        let alg = m2();
        prop_assert_eq!(alg.star(&alg.mul(&a, &b)), alg.mul(&alg.star(&b), &alg.star(&a)));
        prop_assert_eq!(alg.star(&alg.star(&a)), a.clone());
        let ca: Vector = a.iter().map(|x| &c * x).collect();
        let expected: Vector = alg.star(&a).iter().map(|x| &c.conj() * x).collect();
        prop_assert_eq!(alg.star(&ca), expected);
    }
}

#[test]
fn builtin_algebras_validate() {
    let c = scalars();
    let m = matrix_algebra(2).unwrap();
    for (name, alg) in [
        ("scalars", c.clone()),
        ("matrix", m.clone()),
        ("grassmann", grassmann(3).unwrap()),
        ("tensor", tensor_product(&m, &grassmann(1).unwrap())),
        ("direct_sum", direct_sum(&c, &m)),
    ] {
        assert!(alg.validate().passed(), "{name}: {}", alg.validate().summary());
    }
}

#[test]
fn non_positive_density_is_refuted() {
    let alg = m2();
    let omega = state(&Matrix::from_ints(&[&[1, 0], &[0, -1]]));
    let cert = functional_positivity(&alg, &omega).unwrap();
    assert!(!cert.is_positive());
    assert!(cert.replay(&omega.gram(&alg)).is_ok());
}
