//! Exact positive semi-definiteness with replayable certificates.

use starmorita::cli::json::{matrix_to_json, vector_to_json};
use starmorita::linalg::{form, psd_decide, Matrix};
use starmorita::rings::FracScalar;

fn show(label: &str, m: &Matrix) -> starmorita::Result<()> {
    let cert = psd_decide(m)?;
    cert.replay(m)?;
    println!("{label}: {}", matrix_to_json(m));
    println!("  verdict  {:?}", cert.verdict);
    println!("  diagonal {}", vector_to_json(&cert.diagonal));
    if let Some(w) = &cert.witness {
        println!("  witness  {} with ⟨w, M w⟩ = {}", vector_to_json(w), form(m, w, w));
    }
    Ok(())
}

fn main() -> starmorita::Result<()> {
    show("rank one", &Matrix::from_ints(&[&[1, 2], &[2, 4]]))?;
    show("indefinite", &Matrix::from_ints(&[&[1, 2], &[2, 1]]))?;

    // over ℚ[λ](i): λ is a positive infinitesimal
    let lam = FracScalar::lambda();
    let one = FracScalar::one();
    let tiny = Matrix::diag(&[one.clone(), &lam * &lam]);
    show("diag(1, λ²)", &tiny)?;
    let off = Matrix::from_rows(vec![vec![lam.clone(), one.clone()], vec![one, lam]])?;
    show("[[λ, 1], [1, λ]]", &off)?;
    Ok(())
}
