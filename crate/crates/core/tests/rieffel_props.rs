mod common;

use std::sync::Arc;

use common::fixtures::equivalence_bimodules;
use common::*;
use proptest::prelude::*;
use starmorita::algebra::{density_functional, matrix_algebra, StarAlgebra};
use starmorita::bimodule::Bimodule;
use starmorita::linalg::{rank, Matrix};
use starmorita::prehilbert::{InnerProductModule, Representation};
use starmorita::rieffel::{
    direct_sum_unitary, gns_via_induction_compare, induce, induce_intertwiner, roundtrip_unitary,
};

/// The matrix model of `a` amplified to `ℂ^size ⊗ ℂ^k` with Gram `1 ⊗ g`.
fn amplified(a: &Arc<StarAlgebra>, g: &Matrix) -> Representation {
    let model = a.model().expect("matrix-kind algebra");
    let k = g.rows();
    let ops = model.images.iter().map(|m| m.kron(&Matrix::identity(k))).collect();
    let gram = Matrix::identity(model.size()).kron(g);
    Representation::new(a.clone(), InnerProductModule::new(gram).unwrap(), ops).unwrap()
}

fn nondegenerate(k: usize) -> impl Strategy<Value = Matrix> {
    matrix_of(k, k, scalar())
        .prop_filter("invertible", move |b| rank(b) == k)
        .prop_map(|b| &b.adjoint() * &b)
}

fn fixture(k: usize) -> Bimodule {
    equivalence_bimodules().swap_remove(k).1
}

fn fixture_index() -> impl Strategy<Value = usize> {
    0..equivalence_bimodules().len()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn induced_product_on_elementary_tensors(
        (k, g, x, y, psi, phi) in (fixture_index(), 1usize..=2).prop_flat_map(|(k, d)| {
            let x = fixture(k);
            let h = x.a.model().unwrap().size() * d;
            (Just(k), psd(d, scalar()), vector_of(x.dim, small_int()), vector_of(x.dim, small_int()),
             vector_of(h, small_int()), vector_of(h, small_int()))
        })
    ) {
        let xm = fixture(k);
        let rep = amplified(&xm.a, &g);
        let ind = induce(&xm, &rep).unwrap();
        prop_assert!(ind.validation.passed(), "{:?}", ind.validation.first_failure());
        let lhs = ind.representation.module.inner(&ind.class_of(&x, &psi), &ind.class_of(&y, &phi));
        let rhs = rep.module.inner(&psi, &rep.op(&xm.inner_a(&x, &y)).apply(&phi));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn induction_is_functorial(
        (k, g1, g2, g3, t, s) in (fixture_index(), 1usize..=2).prop_flat_map(|(k, d)| (
            Just(k), nondegenerate(d), nondegenerate(d), nondegenerate(d),
            matrix_of(d, d, small_int()), matrix_of(d, d, small_int()),
        ))
    ) {
        let xm = fixture(k);
        let size = xm.a.model().unwrap().size();
        let lift = |m: &Matrix| Matrix::identity(size).kron(m);
        let (r1, r2, r3) = (amplified(&xm.a, &g1), amplified(&xm.a, &g2), amplified(&xm.a, &g3));
        let (i1, i2, i3) = (induce(&xm, &r1).unwrap(), induce(&xm, &r2).unwrap(), induce(&xm, &r3).unwrap());
        let id = induce_intertwiner(&xm, &i1, &i1, &lift(&Matrix::identity(g1.rows()))).unwrap();
        prop_assert!(id.matrix.is_identity());
        let vt = induce_intertwiner(&xm, &i1, &i2, &lift(&t)).unwrap();
        let vs = induce_intertwiner(&xm, &i2, &i3, &lift(&s)).unwrap();
        let vst = induce_intertwiner(&xm, &i1, &i3, &lift(&(&s * &t))).unwrap();
        prop_assert_eq!(vst.matrix, &vs.matrix * &vt.matrix);
    }

    #[test]
    fn direct_sums_are_preserved(
        (k, g1, g2) in fixture_index().prop_flat_map(|k| (Just(k), psd(1, scalar()), psd(2, scalar())))
    ) {
        let xm = fixture(k);
        let u = direct_sum_unitary(&xm, &amplified(&xm.a, &g1), &amplified(&xm.a, &g2)).unwrap();
        prop_assert!(u.unitary);
    }

    #[test]
    fn positivity_gate_never_fires_on_constructors(
        (k, g) in (fixture_index(), 1usize..=3).prop_flat_map(|(k, d)| (Just(k), psd(d, scalar())))
    ) {
        let xm = fixture(k);
        let ind = induce(&xm, &amplified(&xm.a, &g));
        prop_assert!(ind.is_ok(), "{:?}", ind.err());
    }

    #[test]
    fn round_trip_is_unitary(
        (k, g) in (fixture_index(), 1usize..=2).prop_flat_map(|(k, d)| (Just(k), nondegenerate(d)))
    ) {
        let xm = fixture(k);
        let rt = roundtrip_unitary(&xm, &amplified(&xm.a, &g)).unwrap();
        prop_assert!(rt.unitary.unitary);
    }

    #[test]
    fn gns_is_induction_with_vacuum(
        rho in (2usize..=3).prop_flat_map(|n| psd(n, scalar()))
    ) {
        let alg = Arc::new(matrix_algebra(rho.rows()).unwrap());
        let omega = density_functional(&alg, &rho).unwrap();
        let cmp = gns_via_induction_compare(alg, &omega).unwrap();
        prop_assert!(cmp.unitary.unitary);
        prop_assert!(cmp.kernels_agree);
        prop_assert_eq!(cmp.vacuum_preserved, Some(true));
        prop_assert_eq!(cmp.induction.dim(), cmp.gns.representation.dim());
    }
}

#[test]
fn fixture_algebras_have_matrix_models() {
    for (name, x) in equivalence_bimodules() {
        assert!(x.a.model().is_some() && x.b.model().is_some(), "{name}");
    }
}
