use std::sync::Arc;

use super::module::InnerProductModule;
use super::rep::Representation;
use crate::algebra::{find_unit, LinearFunctional, StarAlgebra};
use crate::error::{Error, Result};
use crate::linalg::{kernel_basis, psd_decide, PsdCertificate, Quotient, Vector};
use crate::rings::FracScalar;

/// `H_ω = A / J_ω` with `⟨ψ_A, ψ_B⟩ = ω(A*B)` and `π_ω(A)ψ_B = ψ_{AB}`.
#[derive(Clone, Debug)]
pub struct GnsResult {
    pub representation: Representation,
    /// Basis of the Gel'fand ideal `J_ω = {A : ω(A*A) = 0}`.
    pub gelfand_ideal: Vec<Vector>,
    /// `A → H_ω`, `A ↦ ψ_A`.
    pub quotient: Quotient,
    pub certificate: PsdCertificate,
    /// `ψ_1` when the algebra is unital.
    pub vacuum: Option<Vector>,
}

impl GnsResult {
    pub fn class_of(&self, a: &[FracScalar]) -> Vector {
        self.quotient.project(a)
    }
}

/// GNS construction for a functional certified positive.
pub fn gns(alg: Arc<StarAlgebra>, omega: &LinearFunctional) -> Result<GnsResult> {
    let g = omega.gram(&alg);
    let certificate = psd_decide(&g)?;
    if !certificate.is_positive() {
        return Err(Error::NotPositiveFunctional {
            witness: certificate.witness.clone().unwrap_or_default(),
        });
    }
    // Cauchy–Schwarz: {A : ω(A*A) = 0} is the radical of the Gram form
    let gelfand_ideal = kernel_basis(&g);
    let quotient = Quotient::by_span(alg.dim(), &gelfand_ideal);
    let module = InnerProductModule::trusted(quotient.descend_form(&g));
    let ops = (0..alg.dim())
        .map(|i| quotient.descend(&alg.left_mult(&alg.basis(i))))
        .collect::<Result<Vec<_>>>()?;
    let vacuum = find_unit(&alg).map(|u| quotient.project(&u));
    let representation = Representation::new(alg, module, ops)?
        .with_cyclic(vacuum.iter().cloned().collect());
    Ok(GnsResult {
        representation,
        gelfand_ideal,
        quotient,
        certificate,
        vacuum,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{density_functional, matrix_algebra};
    use crate::linalg::{form, Matrix};

    #[test]
    fn rank_one_state() {
        let m2 = Arc::new(matrix_algebra(2).unwrap());
        let omega = density_functional(&m2, &Matrix::from_ints(&[&[1, 0], &[0, 0]])).unwrap();
        let r = gns(m2.clone(), &omega).unwrap();
        assert_eq!(r.representation.dim(), 2);
        assert!(r.representation.validate().passed());
        let vac = r.vacuum.clone().unwrap();
        for i in 0..4 {
            let pi = &r.representation.ops[i];
            assert_eq!(
                form(r.representation.gram(), &vac, &pi.apply(&vac)),
                omega.eval(&m2.basis(i))
            );
        }
    }

    #[test]
    fn faithful_state_and_zero() {
        let m3 = Arc::new(matrix_algebra(3).unwrap());
        let tr = density_functional(&m3, &Matrix::identity(3)).unwrap();
        assert_eq!(gns(m3.clone(), &tr).unwrap().representation.dim(), 9);
        let zero = LinearFunctional::zero(9);
        assert_eq!(gns(m3, &zero).unwrap().representation.dim(), 0);
    }

    #[test]
    fn non_positive_rejected() {
        let m2 = Arc::new(matrix_algebra(2).unwrap());
        let omega = density_functional(&m2, &Matrix::from_ints(&[&[0, 1], &[1, 0]])).unwrap();
        assert!(matches!(gns(m2, &omega), Err(Error::NotPositiveFunctional { .. })));
    }
}
