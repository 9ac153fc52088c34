//! Positivity of elements (`A⁺`, `A⁺⁺`) and the nilpotent obstruction to
//! having sufficiently many positive functionals.

use super::functional::{vector_state, LinearFunctional};
use super::star_algebra::StarAlgebra;
use crate::error::{Error, Result};
use crate::linalg::{is_zero_vector, psd_decide, vec_add, vec_sub, Matrix, PsdCertificate, Vector};
use crate::rings::{FracScalar, Sign};

/// Optional evidence for [`element_positivity`].
#[derive(Clone, Copy, Default)]
pub struct PositivityEvidence<'a> {
    /// Terms `(b_i, B_i)` claimed to satisfy `a = Σ b_i B_i* B_i`, `b_i > 0`.
    pub squares: Option<&'a [(FracScalar, Vector)]>,
    /// A *-representation `(π(e_i), Gram)` whose vector states are searched
    /// for a negative value.
    pub representation: Option<(&'a [Matrix], &'a Matrix)>,
}

#[derive(Clone, Debug, PartialEq)]
pub enum ElementPositivity {
    /// `a ∈ A⁺`, decided exactly through the matrix model.
    PositiveCertified(PsdCertificate),
    /// `a ∈ A⁺⁺` by a verified sum-of-squares witness.
    AlgebraicallyPositiveCertified,
    /// A positive functional with `ω(a) < 0`.
    NegativeCertified {
        functional: LinearFunctional,
        value: FracScalar,
    },
    Unknown,
}

/// Three-way certified positivity verdict for a Hermitian element.
pub fn element_positivity(
    alg: &StarAlgebra,
    a: &[FracScalar],
    evidence: PositivityEvidence<'_>,
) -> Result<ElementPositivity> {
    if !alg.is_hermitian(a) {
        return Err(Error::NotHermitian((0, 0)));
    }
    if let Some(terms) = evidence.squares {
        verify_sum_of_squares(alg, a, terms)?;
        return Ok(ElementPositivity::AlgebraicallyPositiveCertified);
    }
    if let Some(model) = alg.model() {
        let image = model.image(a);
        let cert = psd_decide(&image)?;
        if cert.is_positive() {
            return Ok(ElementPositivity::PositiveCertified(cert));
        }
        let w = cert.witness.clone().expect("negative verdict has a witness");
        let omega = vector_state(&model.images, &Matrix::identity(model.size()), &w);
        let value = omega.eval(a);
        return Ok(ElementPositivity::NegativeCertified {
            functional: omega,
            value,
        });
    }
    if let Some((ops, gram)) = evidence.representation {
        let n = gram.rows();
        let mut pa = Matrix::zeros(n, n);
        for (c, op) in a.iter().zip(ops) {
            if !c.is_zero() {
                pa = &pa + &op.scale(c);
            }
        }
        let h = gram * &pa;
        if h.is_hermitian() {
            let cert = psd_decide(&h)?;
            if let Some(w) = cert.witness {
                let omega = vector_state(ops, gram, &w);
                let value = omega.eval(a);
                return Ok(ElementPositivity::NegativeCertified {
                    functional: omega,
                    value,
                });
            }
        }
    }
    Ok(ElementPositivity::Unknown)
}

/// Check `a = Σ b_i B_i* B_i` with every `b_i > 0`.
pub fn verify_sum_of_squares(
    alg: &StarAlgebra,
    a: &[FracScalar],
    terms: &[(FracScalar, Vector)],
) -> Result<()> {
    let mut total = alg.zero();
    for (k, (b, x)) in terms.iter().enumerate() {
        if !b.is_real() || b.sign() != Sign::Positive {
            return Err(Error::InvalidWitness(format!("coefficient {k} is not positive")));
        }
        let sq = alg.mul(&alg.star(x), x);
        total = vec_add(&total, &sq.iter().map(|s| b * s).collect::<Vec<_>>());
    }
    if total != a {
        return Err(Error::InvalidWitness("Σ b_i B_i* B_i differs from the element".into()));
    }
    Ok(())
}

/// A nonzero normal element `h` with `h^k = 0`.
#[derive(Clone, Debug, PartialEq)]
pub struct NilpotentCertificate {
    pub element: Vector,
    pub exponent: u32,
    pub description: String,
}

impl NilpotentCertificate {
    pub fn replay(&self, alg: &StarAlgebra) -> Result<()> {
        let h = &self.element;
        if h.len() != alg.dim() || is_zero_vector(h) {
            return Err(Error::InvalidWitness("nilpotent candidate is zero or misshaped".into()));
        }
        let hs = alg.star(h);
        if alg.mul(h, &hs) != alg.mul(&hs, h) {
            return Err(Error::InvalidWitness("candidate is not normal".into()));
        }
        match alg.pow(h, self.exponent) {
            Some(p) if is_zero_vector(&p) => Ok(()),
            _ => Err(Error::InvalidWitness(format!("h^{} ≠ 0", self.exponent))),
        }
    }
}

/// Scan basis elements and sums/differences of Hermitian basis pairs for a
/// nonzero normal nilpotent element. The scan is incomplete by design: a
/// miss proves nothing.
pub fn nilpotent_normal_scan(alg: &StarAlgebra) -> Option<NilpotentCertificate> {
    let n = alg.dim();
    let labels = alg.labels();
    let mut candidates: Vec<(Vector, String)> =
        (0..n).map(|i| (alg.basis(i), labels[i].clone())).collect();
    let hermitian: Vec<usize> = (0..n).filter(|&i| alg.star_basis(i) == &alg.basis(i)).collect();
    for (x, &i) in hermitian.iter().enumerate() {
        for &j in &hermitian[x + 1..] {
            let (ei, ej) = (alg.basis(i), alg.basis(j));
            candidates.push((vec_add(&ei, &ej), format!("{} + {}", labels[i], labels[j])));
            candidates.push((vec_sub(&ei, &ej), format!("{} - {}", labels[i], labels[j])));
        }
    }
    let bound = n.max(2) as u32;
    for (h, description) in candidates {
        let hs = alg.star(&h);
        if alg.mul(&h, &hs) != alg.mul(&hs, &h) {
            continue;
        }
        let mut power = h.clone();
        for k in 2..=bound {
            power = alg.mul(&power, &h);
            if is_zero_vector(&power) {
                return Some(NilpotentCertificate {
                    element: h,
                    exponent: k,
                    description,
                });
            }
        }
    }
    None
}
