//! Grassmann algebras admit no equivalence bimodule with ℂ.

use starmorita::algebra::{grassmann, nilpotent_normal_scan};
use starmorita::cli::json::vector_to_json;

fn main() -> starmorita::Result<()> {
    for n in 1..=3 {
        let g = grassmann(n)?;
        match nilpotent_normal_scan(&g) {
            Some(cert) => {
                cert.replay(&g)?;
                println!(
                    "Λ({n}), dim {}: h = {} = {} is normal with h^{} = 0",
                    g.dim(),
                    cert.description,
                    vector_to_json(&cert.element),
                    cert.exponent
                );
            }
            None => println!("Λ({n}): no obstruction found"),
        }
    }
    Ok(())
}
