mod common;

use std::sync::Arc;

use common::*;
use proptest::prelude::*;
use starmorita::algebra::{density_functional, matrix_algebra};
use starmorita::linalg::{kernel_basis, psd_decide, rank, Matrix, Vector};
use starmorita::prehilbert::{defining_representation, direct_sum, gns, intertwiners, InnerProductModule};
use starmorita::rings::FracScalar;

/// `G[(a,b),(c,d)] = ω(E_ab* E_cd) = δ_ac ϱ_db`, written out by hand.
fn matrix_gns_gram(rho: &Matrix) -> Matrix {
    let n = rho.rows();
    Matrix::from_fn(n * n, n * n, |i, j| {
        let (a, b, c, d) = (i / n, i % n, j / n, j % n);
        if a == c {
            rho[(d, b)].clone()
        } else {
            FracScalar::zero()
        }
    })
}

fn nondegenerate(n: usize) -> impl Strategy<Value = Matrix> {
    matrix_of(n, n, scalar())
        .prop_filter("invertible", move |b| rank(b) == n)
        .prop_map(|b| &b.adjoint() * &b)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn cauchy_schwarz(pair in (1usize..=4).prop_flat_map(|n| (psd(n, scalar()), vector_of(n, scalar()), vector_of(n, scalar())))) {
        let (g, x, y) = pair;
        let h = InnerProductModule::new(g).unwrap();
        let xy = h.inner(&x, &y);
        let bound = &(&h.inner(&x, &x) * &h.inner(&y, &y)) - &xy.norm_sq();
        prop_assert!(bound.re().sign().is_non_negative());
    }

    #[test]
    fn polarization(
        data in (1usize..=3).prop_flat_map(|n| (psd(n, scalar()), vector_of(n, scalar()), vector_of(n, scalar())))
    ) {
        let (g, x, y) = data;
        let h = InnerProductModule::new(g).unwrap();
        let i = FracScalar::i();
        let mut total = FracScalar::zero();
        let mut ik = FracScalar::one();
        for _ in 0..4 {
            let z: Vector = x.iter().zip(&y).map(|(a, b)| a + &(&ik * b)).collect();
            total = &total + &(&ik.conj() * &h.inner(&z, &z));
            ik = &ik * &i;
        }
        prop_assert_eq!(total, &FracScalar::from_int(4) * &h.inner(&x, &y));
    }

    #[test]
    fn gns_dimension_law(rho in (2usize..=3).prop_flat_map(|n| psd(n, gaussian_rational()))) {
        let n = rho.rows();
        let alg = Arc::new(matrix_algebra(n).unwrap());
        let g = gns(alg.clone(), &density_functional(&alg, &rho).unwrap()).unwrap();
        let oracle = n * n - kernel_basis(&matrix_gns_gram(&rho)).len();
        prop_assert_eq!(g.representation.dim(), oracle);
        prop_assert_eq!(g.representation.dim(), n * rank(&rho));
        prop_assert!(g.representation.validate().passed());
        prop_assert!(g.representation.is_strongly_nondegenerate());
    }

    #[test]
    fn gns_vacuum_reproduces_functional(rho in psd(2, scalar()), a in vector_of(4, scalar())) {
        let alg = Arc::new(matrix_algebra(2).unwrap());
        let omega = density_functional(&alg, &rho).unwrap();
        let g = gns(alg, &omega).unwrap();
        let psi = g.vacuum.clone().unwrap();
        let value = g.representation.module.inner(&psi, &g.representation.op(&a).apply(&psi));
        prop_assert_eq!(value, omega.eval(&a));
    }
}

#[test]
fn direct_sums_of_defining_reps() {
    let alg = Arc::new(matrix_algebra(2).unwrap());
    let def = defining_representation(alg.clone()).unwrap();
    let sum = direct_sum(&[&def, &def]).unwrap();
    assert!(sum.validate().passed());
    let omega = density_functional(&alg, &Matrix::identity(2)).unwrap();
    let g = gns(alg, &omega).unwrap();
    let space = intertwiners(&g.representation, &sum, 0).unwrap();
    let u = space.unitary.found().expect("unitary");
    assert!(u.unitary);
    assert!(psd_decide(g.representation.gram()).unwrap().is_positive());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn adjoint_calculus(
        data in (1usize..=3).prop_flat_map(|n| (
            nondegenerate(n), matrix_of(n, n, small_int()), matrix_of(n, n, small_int()), small_int(), small_int(),
            vector_of(n, scalar()), vector_of(n, scalar()),
        ))
    ) {
        let (g, a, b, s, t, v, w) = data;
        let h = InnerProductModule::new(g).unwrap();
        let (sa, tb) = (h.adjoint(&a).unwrap(), h.adjoint(&b).unwrap());
        let combo = &a.scale(&s) + &b.scale(&t);
        prop_assert_eq!(h.adjoint(&combo).unwrap(), &sa.scale(&s.conj()) + &tb.scale(&t.conj()));
        prop_assert_eq!(h.adjoint(&(&a * &b)).unwrap(), &tb * &sa);
        prop_assert_eq!(h.adjoint(&sa).unwrap(), a.clone());
        prop_assert_eq!(h.inner(&v, &a.apply(&w)), h.inner(&sa.apply(&v), &w));
    }
}
