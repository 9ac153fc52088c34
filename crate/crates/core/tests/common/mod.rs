//! Shared generators for exact scalars, vectors and matrices.
#![allow(dead_code)]

pub mod fixtures;

use proptest::prelude::*;
use starmorita::linalg::{Matrix, Vector};
use starmorita::rings::{BaseElement, FracScalar, Scalar};

pub fn rational() -> impl Strategy<Value = BaseElement> + Clone {
    (-6i64..=6, 1i64..=4).prop_map(|(p, q)| BaseElement::from_ratio(p, q))
}

/// Polynomials in λ of degree ≤ 2 with small rational coefficients.
pub fn base() -> impl Strategy<Value = BaseElement> + Clone {
    prop::collection::vec((-4i64..=4, 1i64..=3), 1..=3).prop_map(|cs| {
        cs.into_iter()
            .enumerate()
            .map(|(k, (p, q))| &BaseElement::from_ratio(p, q) * &BaseElement::lambda().pow(k as u32))
            .fold(BaseElement::zero(), |acc, t| &acc + &t)
    })
}

pub fn nonzero_base() -> impl Strategy<Value = BaseElement> + Clone {
    base().prop_filter("nonzero", |b| !b.is_zero())
}

/// Elements of `ℚ(i)`.
pub fn gaussian_rational() -> impl Strategy<Value = FracScalar> + Clone {
    (rational(), rational()).prop_map(|(re, im)| FracScalar::from(Scalar::new(re, im)))
}

/// Elements of `ℚ[λ](i)`.
pub fn deformed() -> impl Strategy<Value = FracScalar> + Clone {
    (base(), base()).prop_map(|(re, im)| FracScalar::from(Scalar::new(re, im)))
}

/// Elements of `ℚ(λ)(i)` whose denominator is regular at `λ = 0`.
pub fn fraction() -> impl Strategy<Value = FracScalar> + Clone {
    (deformed(), base()).prop_map(|(num, den)| {
        let den = &den * &BaseElement::lambda();
        let den = &den + &BaseElement::one();
        &num * &FracScalar::from(Scalar::real(den)).inv().expect("regular denominator")
    })
}

/// Either ring, chosen per case.
pub fn scalar() -> impl Strategy<Value = FracScalar> + Clone {
    prop_oneof![gaussian_rational(), deformed()]
}

pub fn small_int() -> impl Strategy<Value = FracScalar> + Clone {
    (-3i64..=3, -3i64..=3).prop_map(|(a, b)| FracScalar::gaussian(a, b))
}

pub fn vector_of(n: usize, s: impl Strategy<Value = FracScalar> + Clone) -> impl Strategy<Value = Vector> + Clone {
    prop::collection::vec(s, n)
}

pub fn matrix_of(n: usize, m: usize, s: impl Strategy<Value = FracScalar> + Clone) -> impl Strategy<Value = Matrix> + Clone {
    prop::collection::vec(s, n * m).prop_map(move |e| Matrix::from_fn(n, m, |i, j| e[i * m + j].clone()))
}

pub fn hermitian(n: usize, s: impl Strategy<Value = FracScalar> + Clone) -> impl Strategy<Value = Matrix> + Clone {
    matrix_of(n, n, s).prop_map(|m| &m + &m.adjoint())
}

/// `B*B` for a random (possibly rank-deficient) `k×n` matrix `B`.
pub fn psd(n: usize, s: impl Strategy<Value = FracScalar> + Clone) -> impl Strategy<Value = Matrix> + Clone {
    (1..=n).prop_flat_map(move |k| matrix_of(k, n, s.clone()).prop_map(|b| &b.adjoint() * &b))
}

pub fn rational_vector(n: usize) -> impl Strategy<Value = Vector> + Clone {
    vector_of(n, small_int())
}
