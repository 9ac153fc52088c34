//! Square-root-free congruence diagonalization of Hermitian matrices and the
//! resulting exact positivity decision.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use super::matrix::{form, Matrix, Vector};
use super::reduce::rank;
use crate::error::{Error, Result};
use crate::rings::{BaseElement, FracScalar, Scalar, Sign};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Positive,
    NotPositive,
}

/// Certificate for a positivity verdict on a Hermitian matrix `ϱ`.
///
/// The rows `v_i` of `basis` satisfy `⟨v_i, ϱ v_j⟩ = δ_ij p_i`. When the
/// verdict is negative, `witness` is one of those rows with `p_i < 0`.
#[derive(Clone, Debug, PartialEq)]
pub struct PsdCertificate {
    pub verdict: Verdict,
    pub basis: Matrix,
    pub diagonal: Vec<FracScalar>,
    pub witness: Option<Vector>,
}

impl PsdCertificate {
    pub fn is_positive(&self) -> bool {
        self.verdict == Verdict::Positive
    }

    /// Value `⟨v, ϱ v⟩` of the witness, if present.
    pub fn witness_value(&self, rho: &Matrix) -> Option<FracScalar> {
        self.witness.as_ref().map(|w| form(rho, w, w))
    }

    /// Re-checks every claim of the certificate against `rho`.
    pub fn replay(&self, rho: &Matrix) -> Result<()> {
        let n = rho.rows();
        let bad = |m: &str| Err(Error::InvalidWitness(m.to_string()));
        if self.basis.rows() != n || self.basis.cols() != n || self.diagonal.len() != n {
            return bad("certificate shape does not match the matrix");
        }
        if rank(&self.basis) != n {
            return bad("certificate basis is not invertible");
        }
        let u = &self.basis;
        let gram = &(&u.conj() * rho) * &u.transpose();
        if gram != Matrix::diag(&self.diagonal) {
            return bad("basis relation ⟨v_i, ϱ v_j⟩ = δ_ij p_i fails");
        }
        let all_non_negative = self.diagonal.iter().all(|p| p.sign().is_non_negative());
        match self.verdict {
            Verdict::Positive if all_non_negative => Ok(()),
            Verdict::Positive => bad("positive verdict with a negative diagonal entry"),
            Verdict::NotPositive => match self.witness_value(rho) {
                Some(v) if v.sign() == Sign::Negative => Ok(()),
                _ => bad("negative verdict without a negative witness"),
            },
        }
    }
}

/// Basis `v_1..v_n` (rows of `U`) with `⟨v_i, ϱ v_j⟩ = δ_ij p_i` exactly.
///
/// Pivots are the first remaining index with nonzero diagonal entry. When all
/// remaining diagonal entries vanish but some `a = ϱ_ij ≠ 0` does not, `e_i`
/// is replaced by `e_i + e_j` (if `Re a ≠ 0`) or `e_i + i·e_j`. Basis vectors
/// are finally rescaled to primitive integer-polynomial form.
pub fn congruence_diagonalize(rho: &Matrix) -> Result<(Matrix, Vec<FracScalar>)> {
    rho.ensure_hermitian()?;
    let n = rho.rows();
    let mut remaining: Vec<Vector> = (0..n).map(|i| super::basis_vector(n, i)).collect();
    // gram of the remaining vectors, kept in sync by Schur updates
    let mut m = rho.clone();
    let mut done: Vec<Vector> = Vec::with_capacity(n);
    let mut pivots: Vec<FracScalar> = Vec::with_capacity(n);
    while !remaining.is_empty() {
        let k = remaining.len();
        let pivot = match (0..k).find(|&a| !m[(a, a)].is_zero()) {
            Some(a) => a,
            None => {
                let Some((a, b)) = (0..k)
                    .flat_map(|a| (0..k).map(move |b| (a, b)))
                    .find(|&(a, b)| a != b && !m[(a, b)].is_zero())
                else {
                    done.append(&mut remaining);
                    break;
                };
                let c = if m[(a, b)].re().is_zero() {
                    FracScalar::i()
                } else {
                    FracScalar::one()
                };
                remaining[a] = super::vec_add(&remaining[a], &super::vec_scale(&c, &remaining[b]));
                // row/column update of the Gram for w_a ← w_a + c·w_b
                for j in 0..k {
                    let v = &m[(a, j)] + &(&c.conj() * &m[(b, j)]);
                    m[(a, j)] = v;
                }
                for i in 0..k {
                    let v = &m[(i, a)] + &(&m[(i, b)] * &c);
                    m[(i, a)] = v;
                }
                a
            }
        };
        let p = m[(pivot, pivot)].clone();
        let p_inv = p.inv()?;
        let w_a = remaining[pivot].clone();
        let others: Vec<usize> = (0..k).filter(|&b| b != pivot).collect();
        // coef_c = ⟨w_a, ϱ w_c⟩ / p, shared by the update and the new vectors
        let coefs: Vec<FracScalar> = others.iter().map(|&c| &m[(pivot, c)] * &p_inv).collect();
        let mut next_m = Matrix::zeros(k - 1, k - 1);
        for (bi, &b) in others.iter().enumerate() {
            let ba = &m[(b, pivot)];
            for (ci, &c) in others.iter().enumerate().skip(bi) {
                let mut v = m[(b, c)].clone();
                if !ba.is_zero() && !coefs[ci].is_zero() {
                    v = &v - &(ba * &coefs[ci]);
                }
                if ci != bi {
                    next_m[(ci, bi)] = v.conj();
                }
                next_m[(bi, ci)] = v;
            }
        }
        let next: Vec<Vector> = others
            .iter()
            .zip(&coefs)
            .map(|(&b, coef)| {
                if coef.is_zero() {
                    remaining[b].clone()
                } else {
                    super::vec_sub(&remaining[b], &super::vec_scale(coef, &w_a))
                }
            })
            .collect();
        done.push(w_a);
        pivots.push(p);
        remaining = next;
        m = next_m;
    }
    // the Schur complement is the Gram of the remaining vectors, so the
    // leftovers are null and each pivot is ⟨w, ϱ w⟩
    pivots.resize(done.len(), FracScalar::zero());
    let (basis, diagonal): (Vec<Vector>, Vec<FracScalar>) = done
        .iter()
        .zip(pivots)
        .map(|(v, p)| {
            let (w, s) = primitive_scaled(v);
            let d = if p.is_zero() { p } else { &(&p * &s) * &s };
            (w, d)
        })
        .unzip();
    let u = if n == 0 {
        Matrix::zeros(0, 0)
    } else {
        Matrix::from_rows(basis)?
    };
    Ok((u, diagonal))
}

/// Exact positive semi-definiteness decision with certificate.
pub fn psd_decide(rho: &Matrix) -> Result<PsdCertificate> {
    let (basis, diagonal) = congruence_diagonalize(rho)?;
    let negative = diagonal.iter().position(|p| p.sign() == Sign::Negative);
    Ok(PsdCertificate {
        verdict: if negative.is_some() {
            Verdict::NotPositive
        } else {
            Verdict::Positive
        },
        witness: negative.map(|i| basis.row_vec(i)),
        basis,
        diagonal,
    })
}

/// Entries forced to vanish in a positive semi-definite matrix: row and column
/// of every zero diagonal entry (zero-length vectors are orthogonal to all).
/// Indices are 0-based; pairs are reported in both orders.
pub fn forced_zero_entries(g: &Matrix) -> Result<BTreeSet<(usize, usize)>> {
    let cert = psd_decide(g)?;
    if !cert.is_positive() {
        return Err(Error::NotPsd {
            witness: cert.witness.unwrap_or_default(),
        });
    }
    let n = g.rows();
    let mut out = BTreeSet::new();
    for i in (0..n).filter(|&i| g[(i, i)].is_zero()) {
        for j in 0..n {
            out.insert((i, j));
            out.insert((j, i));
        }
    }
    Ok(out)
}

/// Rescale `v` by a nonzero real field element so that all entries become
/// integer polynomials without common factor and the first nonzero real
/// part is positive.
pub fn primitive(v: &[FracScalar]) -> Vector {
    primitive_scaled(v).0
}

/// [`primitive`] together with the real factor `s` it multiplied by.
fn primitive_scaled(v: &[FracScalar]) -> (Vector, FracScalar) {
    if v.iter().all(FracScalar::is_zero) {
        return (v.to_vec(), FracScalar::one());
    }
    let mut den = BaseElement::one();
    for x in v.iter().filter(|x| !x.is_zero()) {
        let d = x.denominator();
        if !d.is_one() {
            let g = den.gcd(d);
            den = (&den * d).exact_div(&g);
        }
    }
    let scaled: Vec<FracScalar> = v.iter().map(|x| x * &FracScalar::from(den.clone())).collect();
    let mut g: Option<BaseElement> = None;
    for x in scaled.iter().filter(|x| !x.is_zero()) {
        for part in [&x.numerator().re, &x.numerator().im] {
            if !part.is_zero() {
                g = Some(match g {
                    None => part.gcd(part),
                    Some(g) => g.gcd(part),
                });
            }
        }
    }
    let g = g.expect("nonzero vector");
    let reduced: Vec<FracScalar> = scaled
        .iter()
        .map(|x| FracScalar::new(x.numerator().clone(), g.clone()).expect("nonzero gcd"))
        .collect();
    let coeffs = || {
        reduced.iter().flat_map(|x| {
            let n = x.numerator();
            n.re.coeffs().iter().chain(n.im.coeffs().iter())
        })
    };
    let den_lcm = coeffs().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let int_gcd = coeffs().fold(BigInt::zero(), |acc, c| {
        acc.gcd(&(c * &den_lcm).to_integer())
    });
    let mut factor = BigRational::new(den_lcm, int_gcd);
    let first = reduced.iter().find(|x| !x.is_zero()).expect("nonzero vector");
    let lead = if first.re().is_zero() { first.im() } else { first.re() };
    if lead.sign() == Sign::Negative {
        factor = -factor;
    }
    let scale = FracScalar::new(Scalar::real(den.scale(&factor)), g).expect("nonzero gcd");
    (reduced.iter().map(|x| x.scale_rational(&factor)).collect(), scale)
}
