//! Finite-dimensional *-algebras over `Ĉ`: structure constants, positivity of
//! functionals and elements, units and deformations.

pub mod builtin;
mod functional;
mod hom;
mod identity;
mod positivity;
mod star_algebra;

pub use builtin::{direct_sum, grassmann, matrix_algebra, scalars, tensor_product};
pub use functional::{density_functional, functional_positivity, vector_state, LinearFunctional};
pub use hom::StarHomomorphism;
pub use identity::{
    find_unit, identity_structure, validate_approx_identity, ApproxIdentityWitness, IdentityReport,
};
pub use positivity::{
    element_positivity, nilpotent_normal_scan, verify_sum_of_squares, ElementPositivity,
    NilpotentCertificate, PositivityEvidence,
};
pub use star_algebra::{AlgebraKind, MatrixModel, StarAlgebra};

use crate::error::{Error, Result};

/// Classical limit of a deformed algebra, validated as a *-algebra. The map
/// `λ ↦ 0` on coefficients is then a *-homomorphism onto it.
pub fn deformation_container(deformed: &StarAlgebra) -> Result<StarAlgebra> {
    let limit = deformed.classical_limit()?;
    let report = limit.validate();
    match report.first_failure() {
        None => Ok(limit),
        Some(c) => Err(Error::NotStarHomomorphism(format!(
            "classical limit fails {}: {}",
            c.name,
            c.detail.clone().unwrap_or_default()
        ))),
    }
}

/// Coefficientwise `λ ↦ 0` on an element.
pub fn classical_limit_element(a: &[crate::rings::FracScalar]) -> Result<crate::linalg::Vector> {
    a.iter().map(crate::rings::FracScalar::classical_limit).collect()
}
