//! GNS representations of density functionals on M_n(ℂ).

use std::sync::Arc;

use starmorita::algebra::{density_functional, matrix_algebra, LinearFunctional};
use starmorita::cli::json::vector_to_json;
use starmorita::linalg::Matrix;
use starmorita::prehilbert::gns;
use starmorita::rings::FracScalar;
use starmorita::Error;

fn main() -> starmorita::Result<()> {
    let n = 3;
    let alg = Arc::new(matrix_algebra(n)?);
    for k in 1..=n {
        let rho = Matrix::diag(&(0..n).map(|i| FracScalar::from_int((i < k) as i64)).collect::<Vec<_>>());
        let omega = density_functional(&alg, &rho)?;
        let g = gns(alg.clone(), &omega)?;
        println!(
            "rank {k}: dim H_ω = {}, Gel'fand ideal dimension {}",
            g.representation.dim(),
            g.gelfand_ideal.len()
        );
        println!("  {}", g.representation.validate().summary());
    }

    // ω(E_11) = 1, ω(E_22) = -1 is not positive
    let mut values = vec![FracScalar::zero(); n * n];
    values[0] = FracScalar::one();
    values[n + 1] = FracScalar::from_int(-1);
    match gns(alg, &LinearFunctional::new(values)) {
        Err(Error::NotPositiveFunctional { witness }) => {
            println!("refused: ω(a*a) < 0 for a = {}", vector_to_json(&witness))
        }
        other => println!("unexpected: {other:?}"),
    }
    Ok(())
}
