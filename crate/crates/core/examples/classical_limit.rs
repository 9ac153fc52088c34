//! Classical limits λ → 0 and their compatibility with induction.

use std::sync::Arc;

use starmorita::algebra::scalars;
use starmorita::bimodule::{free_module_bimodule, Level, ValidationOptions};
use starmorita::classical::{cl_prehilbert, deformed_homomorphism_bimodule, naturality_check, rotation_conjugation};
use starmorita::cli::json::matrix_to_json;
use starmorita::linalg::Matrix;
use starmorita::prehilbert::{defining_representation, InnerProductModule, Representation};
use starmorita::rings::FracScalar;

fn main() -> starmorita::Result<()> {
    let lam = FracScalar::lambda();
    let one = FracScalar::one();
    let gram = Matrix::diag(&[one.clone(), lam.clone(), &one + &lam]);
    let h = InnerProductModule::new(gram.clone())?;
    let (h0, map) = cl_prehilbert(&h)?;
    println!("diag(1, λ, 1+λ) → {} (dimension {})", matrix_to_json(h0.gram()), map.target_dim());

    let pi = Representation::new(Arc::new(scalars()), h, vec![Matrix::identity(3)])?;
    let x = free_module_bimodule(Arc::new(scalars()), 2, None)?;
    let nat = naturality_check(&x, &pi)?;
    println!(
        "limit of induced: {}, induced from limit: {}, comparison unitary: {}",
        nat.limit_of_induced.dim(),
        nat.induced_from_limit.dim(),
        nat.unitary.unitary
    );

    let (m2, images) = rotation_conjugation()?;
    let cmp = deformed_homomorphism_bimodule(m2.clone(), m2.clone(), images)?;
    println!("limit of deformed homomorphism bimodule matches the classical one: {:?}", cmp.isomorphic);
    println!(
        "  {}",
        cmp.limit.bimodule.validate(&ValidationOptions::level(Level::Equivalence)).summary()
    );
    let nat = naturality_check(&cmp.bimodule, &defining_representation(m2)?)?;
    println!("  naturality unitary: {}", nat.unitary.unitary);
    Ok(())
}
