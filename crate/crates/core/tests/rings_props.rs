mod common;

use common::*;
use proptest::prelude::*;
use starmorita::rings::codec::{frac_from_json, frac_to_json};
use starmorita::rings::{classical_limit_scalar, BaseElement, FracScalar, Sign};

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn trichotomy(a in base()) {
        let signs = [a.sign() == Sign::Positive, a.is_zero(), (-&a).sign() == Sign::Positive];
        prop_assert_eq!(signs.iter().filter(|&&s| s).count(), 1);
    }

    #[test]
    fn positive_cone_is_closed(a in base(), b in base()) {
        if a.sign() == Sign::Positive && b.sign() == Sign::Positive {
            prop_assert_eq!((&a + &b).sign(), Sign::Positive);
            prop_assert_eq!((&a * &b).sign(), Sign::Positive);
        }
    }

    #[test]
    fn squares_are_positive(a in nonzero_base()) {
        prop_assert_eq!((&a * &a).sign(), Sign::Positive);
    }

    #[test]
    fn sign_is_multiplicative(a in base(), b in base()) {
        prop_assert_eq!((&a * &b).sign(), a.sign() * b.sign());
    }

    #[test]
    fn no_zero_divisors(a in base(), b in base()) {
        if (&a * &b).is_zero() {
            prop_assert!(a.is_zero() || b.is_zero());
        }
    }

    #[test]
    fn order_is_translation_invariant(a in base(), b in base(), c in base()) {
        prop_assert_eq!(a < b, &a + &c < &b + &c);
    }

    #[test]
    fn field_signs_match_ring(a in base(), b in nonzero_base()) {
        let q = &FracScalar::from(a.clone()) * &FracScalar::from(b.clone()).inv().unwrap();
        prop_assert_eq!(q.sign(), a.sign() * b.sign());
    }

    #[test]
    fn classical_limit_is_a_homomorphism(a in fraction(), b in fraction()) {
        let cl = |z: &FracScalar| classical_limit_scalar(z).unwrap();
        prop_assert_eq!(cl(&(&a + &b)), &cl(&a) + &cl(&b));
        prop_assert_eq!(cl(&(&a * &b)), &cl(&a) * &cl(&b));
        prop_assert_eq!(cl(&a.conj()), cl(&a).conj());
        prop_assert!(cl(&a).is_rational());
    }

    #[test]
    fn classical_limit_keeps_non_negative(a in fraction()) {
        let r = a.re();
        if r.sign().is_non_negative() {
            prop_assert!(classical_limit_scalar(&r).unwrap().sign().is_non_negative());
        }
    }

    #[test]
    fn norm_is_non_negative(z in scalar()) {
        let n = z.norm_sq();
        prop_assert!(n.sign().is_non_negative());
        prop_assert_eq!(n.is_zero(), z.is_zero());
        prop_assert_eq!(&z * &z.conj(), n);
    }

    #[test]
    fn inverse_is_exact(z in fraction()) {
        if !z.is_zero() {
            prop_assert!((&z * &z.inv().unwrap()).is_one());
        }
    }

    #[test]
    fn gcd_divides_and_keeps_common_factor(a in nonzero_base(), b in nonzero_base(), c in nonzero_base()) {
        let (ac, bc) = (&a * &c, &b * &c);
        let g = ac.gcd(&bc);
        prop_assert!(ac.div_rem(&g).1.is_zero());
        prop_assert!(bc.div_rem(&g).1.is_zero());
        prop_assert!(g.div_rem(&c.gcd(&c)).1.is_zero());
    }

    #[test]
    fn codec_round_trips(z in fraction()) {
        prop_assert_eq!(frac_from_json(&frac_to_json(&z), "$").unwrap(), z);
    }
}

#[test]
fn lambda_is_infinitesimal() {
    let lam = BaseElement::lambda();
    for n in 1..20 {
        let gap = &BaseElement::from_ratio(1, n) - &lam;
        assert_eq!(gap.sign(), Sign::Positive);
    }
    assert_eq!((-&lam).sign(), Sign::Negative);
    assert_eq!((&lam - &lam.pow(2)).sign(), Sign::Positive);
}

#[test]
fn pole_at_zero_has_no_limit() {
    let inv = FracScalar::lambda().inv().unwrap();
    assert!(classical_limit_scalar(&inv).is_err());
}
