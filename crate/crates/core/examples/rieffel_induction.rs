//! Rieffel induction, round trips and GNS as induction.

use std::sync::Arc;

use starmorita::algebra::{density_functional, matrix_algebra};
use starmorita::bimodule::free_module_bimodule;
use starmorita::linalg::Matrix;
use starmorita::prehilbert::defining_representation;
use starmorita::rieffel::{gns_via_induction_compare, induce, roundtrip_unitary};
use starmorita::rings::FracScalar;

fn main() -> starmorita::Result<()> {
    let m2 = Arc::new(matrix_algebra(2)?);
    let x = free_module_bimodule(m2.clone(), 2, None)?;
    let pi = defining_representation(m2.clone())?;

    let ind = induce(&x, &pi)?;
    println!(
        "X ⊗ H has dimension {}, X ⊗_A H has {}, induced space has {}",
        ind.tensor_dim,
        ind.balanced_dim(),
        ind.dim()
    );
    println!("  {}", ind.validation.summary());

    let rt = roundtrip_unitary(&x, &pi)?;
    println!(
        "round trip: {} → {} → {}, unitary: {}",
        pi.dim(),
        rt.first.dim(),
        rt.second.dim(),
        rt.unitary.unitary
    );

    let rho = Matrix::diag(&[FracScalar::from_ratio(1, 3), FracScalar::from_ratio(2, 3)]);
    let omega = density_functional(&m2, &rho)?;
    let cmp = gns_via_induction_compare(m2, &omega)?;
    println!(
        "GNS vs induction for the trace-like state: unitary {}, kernels agree {}",
        cmp.unitary.unitary, cmp.kernels_agree
    );
    Ok(())
}
