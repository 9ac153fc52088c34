//! Axiom checks for free-module and corner bimodules.

use std::sync::Arc;

use starmorita::algebra::builtin::matrix_element;
use starmorita::algebra::{matrix_algebra, scalars};
use starmorita::bimodule::{corner_bimodule, finite_rank_algebra, free_module_bimodule, Level, ValidationOptions};
use starmorita::linalg::Matrix;
use starmorita::rings::FracScalar;

fn main() -> starmorita::Result<()> {
    let options = ValidationOptions::level(Level::Equivalence);

    let x = free_module_bimodule(Arc::new(scalars()), 3, None)?;
    let report = x.validate(&options);
    println!("ℂ³ as M_3–ℂ bimodule: {}", report.summary());
    for check in &report.checks {
        println!("  {:<16} {}", check.name, if check.passed { "ok" } else { "FAILED" });
    }
    let k = finite_rank_algebra(&x)?;
    println!("  𝒦(X_A) has dimension {}; L_B onto 𝒦: {}", k.algebra.dim(), k.left_is_isomorphism());

    let y = free_module_bimodule(Arc::new(matrix_algebra(2)?), 2, None)?;
    println!("M_2² as M_2(M_2)–M_2 bimodule: {}", y.validate(&options).summary());

    let one = FracScalar::one();
    let q = matrix_element(&Matrix::diag(&[one.clone(), one, FracScalar::zero()]));
    let c = corner_bimodule(Arc::new(scalars()), 3, &q)?;
    println!(
        "corner Q M_3 with Q = diag(1,1,0): corner dimension {}, {}",
        c.corner.dim(),
        c.bimodule.validate(&options).summary()
    );
    Ok(())
}
