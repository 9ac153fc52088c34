//! Morita context maps and the induced isomorphism of centers.

use std::sync::Arc;

use starmorita::algebra::{direct_sum, scalars};
use starmorita::bimodule::free_module_bimodule;
use starmorita::cli::json::matrix_to_json;
use starmorita::rieffel::{center_isomorphism, morita_context_check};

fn main() -> starmorita::Result<()> {
    // A = ℂ ⊕ ℂ has a two-dimensional center
    let a = Arc::new(direct_sum(&scalars(), &scalars()));
    let x = free_module_bimodule(a, 2, None)?;
    let report = morita_context_check(&x)?;
    println!("context: {}", report.summary());
    let phi = center_isomorphism(&x)?;
    println!(
        "center(B) has dimension {}, center(A) has dimension {}",
        phi.basis_b.len(),
        phi.basis_a.len()
    );
    println!("map: {}", matrix_to_json(&phi.map.matrix()));
    Ok(())
}
