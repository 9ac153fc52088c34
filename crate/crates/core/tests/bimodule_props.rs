mod common;

use std::sync::Arc;

use common::fixtures::{equivalence_bimodules, grassmann_candidates};
use common::*;
use proptest::prelude::*;
use starmorita::algebra::{element_positivity, nilpotent_normal_scan, scalars, ElementPositivity, PositivityEvidence};
use starmorita::bimodule::{
    finite_rank_algebra, free_module_bimodule, quotient_by_n, theta, Bimodule, Level, ValidationOptions,
};
use starmorita::linalg::{psd_decide, Matrix};

fn bimodule_index() -> impl Strategy<Value = usize> {
    0..equivalence_bimodules().len()
}

/// A `ℂ–ℂ` bimodule of dimension `m` whose two products are both given by
/// the Gram matrix `g`.
fn gram_bimodule(g: &Matrix) -> Bimodule {
    let c = Arc::new(scalars());
    let m = g.rows();
    let h: Vec<Vec<_>> = (0..m).map(|p| (0..m).map(|q| vec![g[(p, q)].clone()]).collect()).collect();
    let hb: Vec<Vec<_>> = (0..m).map(|p| (0..m).map(|q| vec![g[(q, p)].clone()]).collect()).collect();
    Bimodule::new(c.clone(), c, vec![Matrix::identity(m)], vec![Matrix::identity(m)], h)
        .unwrap()
        .with_inner_b(hb)
        .unwrap()
}

#[test]
fn fixtures_are_equivalence_bimodules() {
    for (name, x) in equivalence_bimodules() {
        let r = x.validate(&ValidationOptions::level(Level::Equivalence));
        assert!(r.passed(), "{name}: {:?}", r.first_failure());
    }
}

#[test]
fn matrix_kind_pairs_have_no_nilpotent_obstruction() {
    for (name, x) in equivalence_bimodules() {
        assert!(nilpotent_normal_scan(&x.a).is_none(), "{name}: A");
        assert!(nilpotent_normal_scan(&x.b).is_none(), "{name}: B");
    }
}

#[test]
fn grassmann_candidates_never_validate() {
    for n in 1..=3 {
        for (name, x, opts) in grassmann_candidates(n) {
            let r = x.validate(&opts);
            assert!(!r.passed(), "Λ(ℂ^{n}) candidate {name} validated");
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn compatibility_on_random_triples(
        (k, x, y, z) in bimodule_index().prop_flat_map(|k| {
            let m = equivalence_bimodules()[k].1.dim;
            (Just(k), vector_of(m, small_int()), vector_of(m, small_int()), vector_of(m, small_int()))
        })
    ) {
        let (_, xm) = &equivalence_bimodules()[k];
        let lhs = xm.left_op(&xm.inner_b(&x, &y).unwrap()).apply(&z);
        let rhs = xm.right_op(&xm.inner_a(&y, &z)).apply(&x);
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn rank_one_operators_are_positive(x in (1usize..=3).prop_flat_map(|n| vector_of(n, scalar()))) {
        let n = x.len();
        let xm = free_module_bimodule(Arc::new(scalars()), n, None).unwrap();
        let k = finite_rank_algebra(&xm).unwrap();
        let t = theta(&xm, &x, &x);
        // oracle: Θ_{x,x} = x x* as an operator on ℂⁿ
        let outer = Matrix::from_fn(n, n, |i, j| &x[i] * &x[j].conj());
        prop_assert_eq!(&t, &outer);
        prop_assert!(psd_decide(&outer).unwrap().is_positive());
        let coords = k.coordinates(&t).unwrap();
        let verdict = element_positivity(&k.algebra, &coords, PositivityEvidence::default()).unwrap();
        prop_assert!(matches!(verdict, ElementPositivity::PositiveCertified(_)), "{:?}", verdict);
    }

    #[test]
    fn radical_quotient_is_idempotent(g in (1usize..=4).prop_flat_map(|m| psd(m, scalar()))) {
        let x = gram_bimodule(&g);
        let once = quotient_by_n(&x).unwrap();
        let twice = quotient_by_n(&once.bimodule).unwrap();
        prop_assert_eq!(once.bimodule.dim, g.rows() - once.radical_a.len());
        prop_assert!(twice.radical_a.is_empty());
        prop_assert_eq!(twice.bimodule.dim, once.bimodule.dim);
        prop_assert!(twice.quotient.proj.is_identity());
        prop_assert_eq!(&twice.bimodule.inner_a, &once.bimodule.inner_a);
        prop_assert_eq!(once.radicals_agree, Some(true));
    }
}
