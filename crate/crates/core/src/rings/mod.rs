//! The ordered-ring tower `ℚ ⊂ ℚ[λ]`, their fraction fields and the
//! quadratic extensions by `i`.
//!
//! Formal power series `ℚ[[λ]]` are modelled by polynomials with the same
//! lowest-coefficient ordering. Fractions whose denominator does not vanish at
//! `λ = 0` are themselves power series, so they keep a classical limit.

mod base;
pub mod codec;
mod frac;
mod scalar;

pub use base::{BaseElement, Sign};
pub use frac::FracScalar;
pub use scalar::Scalar;

use crate::error::Result;

/// `λ ↦ 0` for anything scalar-like.
pub fn classical_limit_scalar(z: &FracScalar) -> Result<FracScalar> {
    z.classical_limit()
}

/// Order of the lowest nonzero coefficient; `None` is `+∞`.
pub fn lambda_order(x: &BaseElement) -> Option<usize> {
    x.lambda_order()
}
