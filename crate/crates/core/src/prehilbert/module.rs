use crate::error::{Error, Result};
use crate::linalg::{form, inverse, kernel_basis, psd_decide, Matrix, PsdCertificate, Quotient, Vector};
use crate::rings::FracScalar;

/// Free module `Cᵐ` with a positive semi-definite Hermitian Gram matrix,
/// `⟨e_p, e_q⟩ = G_pq`.
#[derive(Clone, Debug, PartialEq)]
pub struct InnerProductModule {
    gram: Matrix,
}

impl InnerProductModule {
    /// Checks Hermiticity and semi-definiteness.
    pub fn new(gram: Matrix) -> Result<Self> {
        let cert = psd_decide(&gram)?;
        if !cert.is_positive() {
            return Err(Error::NotPsd {
                witness: cert.witness.unwrap_or_default(),
            });
        }
        Ok(InnerProductModule { gram })
    }

    /// Construct without the positivity check; the caller has a certificate.
    pub(crate) fn trusted(gram: Matrix) -> Self {
        InnerProductModule { gram }
    }

    pub fn standard(m: usize) -> Self {
        InnerProductModule {
            gram: Matrix::identity(m),
        }
    }

    pub fn dim(&self) -> usize {
        self.gram.rows()
    }

    pub fn gram(&self) -> &Matrix {
        &self.gram
    }

    pub fn certificate(&self) -> Result<PsdCertificate> {
        psd_decide(&self.gram)
    }

    pub fn inner(&self, v: &[FracScalar], w: &[FracScalar]) -> FracScalar {
        form(&self.gram, v, w)
    }

    /// The radical `{φ : ⟨φ, ·⟩ = 0}`; by Cauchy–Schwarz it equals the set
    /// of zero-length vectors.
    pub fn null_space(&self) -> Vec<Vector> {
        kernel_basis(&self.gram)
    }

    pub fn is_nondegenerate(&self) -> bool {
        self.null_space().is_empty()
    }

    /// Quotient by the radical, with the induced (non-degenerate) product.
    pub fn quotient_by_null(&self) -> (InnerProductModule, Quotient) {
        let q = Quotient::by_span(self.dim(), &self.null_space());
        let gram = q.descend_form(&self.gram);
        (InnerProductModule { gram }, q)
    }

    /// Adjoint `A* = G⁻¹ A^† G` of an operator on a non-degenerate module.
    pub fn adjoint(&self, a: &Matrix) -> Result<Matrix> {
        let g_inv = inverse(&self.gram).map_err(|_| Error::DegenerateModule)?;
        Ok(&(&g_inv * &a.adjoint()) * &self.gram)
    }

    /// Adjoint of `T: self → other` between non-degenerate modules.
    pub fn adjoint_between(&self, other: &InnerProductModule, t: &Matrix) -> Result<Matrix> {
        let g_inv = inverse(&self.gram).map_err(|_| Error::DegenerateModule)?;
        Ok(&(&g_inv * &t.adjoint()) * other.gram())
    }

    pub fn direct_sum(parts: &[&InnerProductModule]) -> InnerProductModule {
        let grams: Vec<&Matrix> = parts.iter().map(|p| &p.gram).collect();
        InnerProductModule {
            gram: Matrix::direct_sum(&grams),
        }
    }

    pub fn tensor(&self, other: &InnerProductModule) -> InnerProductModule {
        InnerProductModule {
            gram: self.gram.kron(&other.gram),
        }
    }
}
