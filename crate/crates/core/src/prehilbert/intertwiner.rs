use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::rep::Representation;
use crate::error::{Error, Result};
use crate::linalg::{kernel_basis, rank, solve_matrix, Matrix};
use crate::rings::{FracScalar, Sign};

/// A certified intertwiner `T: H₁ → H₂` with `T π₁(a) = π₂(a) T`.
#[derive(Clone, Debug, PartialEq)]
pub struct Intertwiner {
    pub matrix: Matrix,
    pub adjointable: bool,
    /// `⟨Tφ, Tψ⟩ = ⟨φ, ψ⟩`, i.e. `T^† G₂ T = G₁`.
    pub isometric: bool,
    /// Isometric and onto.
    pub unitary: bool,
}

/// Outcome of the bounded search for a unitary intertwiner.
#[derive(Clone, Debug, PartialEq)]
pub enum UnitarySearch {
    Found(Intertwiner),
    /// Proven impossible (e.g. dimensions differ).
    NoUnitary(String),
    /// Nothing found among the candidates tried; no claim is made.
    Inconclusive { candidates_tried: usize },
}

impl UnitarySearch {
    pub fn found(&self) -> Option<&Intertwiner> {
        match self {
            UnitarySearch::Found(t) => Some(t),
            _ => None,
        }
    }
}

#[derive(Clone, Debug)]
pub struct IntertwinerSpace {
    pub basis: Vec<Matrix>,
    pub classified: Vec<Intertwiner>,
    pub unitary: UnitarySearch,
}

fn same_algebra(r1: &Representation, r2: &Representation) -> Result<()> {
    if std::sync::Arc::ptr_eq(&r1.algebra, &r2.algebra) || *r1.algebra == *r2.algebra {
        Ok(())
    } else {
        Err(Error::AlgebraMismatch)
    }
}

/// Exact basis of `{T : T π₁(e_i) = π₂(e_i) T ∀i}`; `T` is `m₂×m₁`.
pub fn intertwiner_basis(r1: &Representation, r2: &Representation) -> Result<Vec<Matrix>> {
    same_algebra(r1, r2)?;
    let (m1, m2) = (r1.dim(), r2.dim());
    let unknowns = m1 * m2;
    if unknowns == 0 {
        return Ok(Vec::new());
    }
    let mut rows = Vec::new();
    for (p1, p2) in r1.ops.iter().zip(&r2.ops) {
        for r in 0..m2 {
            for c in 0..m1 {
                let mut row = vec![FracScalar::zero(); unknowns];
                for k in 0..m1 {
                    let x = &p1[(k, c)];
                    if !x.is_zero() {
                        row[r * m1 + k] = &row[r * m1 + k] + x;
                    }
                }
                for k in 0..m2 {
                    let x = &p2[(r, k)];
                    if !x.is_zero() {
                        row[k * m1 + c] = &row[k * m1 + c] - x;
                    }
                }
                if row.iter().any(|x| !x.is_zero()) {
                    rows.push(row);
                }
            }
        }
    }
    let system = if rows.is_empty() {
        Matrix::zeros(0, unknowns)
    } else {
        Matrix::from_rows(rows)?
    };
    Ok(kernel_basis(&system)
        .into_iter()
        .map(|v| Matrix::from_fn(m2, m1, |r, c| v[r * m1 + c].clone()))
        .collect())
}

/// Basis of the commutant `{C : C π(e_i) = π(e_i) C}`, which is closed under
/// the adjoint of the (non-degenerate) module.
pub fn commutant_basis(rep: &Representation) -> Result<Vec<Matrix>> {
    if !rep.module.is_nondegenerate() {
        return Err(Error::DegenerateModule);
    }
    let basis = intertwiner_basis(rep, rep)?;
    let m = rep.dim();
    let flat: Vec<_> = basis.iter().map(|b| b.entries().to_vec()).collect();
    if !basis.is_empty() {
        let span = Matrix::from_columns(m * m, &flat);
        for c in &basis {
            let adj = rep.module.adjoint(c)?;
            let target = Matrix::from_columns(m * m, &[adj.entries().to_vec()]);
            if solve_matrix(&span, &target)?.is_none() {
                return Err(Error::NotInCommutant);
            }
        }
    }
    Ok(basis)
}

/// Check and classify a candidate intertwiner.
pub fn classify(t: &Matrix, r1: &Representation, r2: &Representation) -> Result<Intertwiner> {
    same_algebra(r1, r2)?;
    if t.rows() != r2.dim() || t.cols() != r1.dim() {
        return Err(Error::NotIntertwiner("shape mismatch".into()));
    }
    for (i, (p1, p2)) in r1.ops.iter().zip(&r2.ops).enumerate() {
        if &(t * p1) != &(p2 * t) {
            return Err(Error::NotIntertwiner(format!(
                "T π₁(e{i}) ≠ π₂(e{i}) T"
            )));
        }
    }
    let (g1, g2) = (r1.gram(), r2.gram());
    // S with ⟨Tφ, ψ⟩ = ⟨φ, Sψ⟩ exists iff G₁ S = T^† G₂ is solvable
    let adjointable = r1.dim() == 0 || solve_matrix(g1, &(&t.adjoint() * g2))?.is_some();
    let isometric = &(&t.adjoint() * g2) * t == *g1;
    let onto = {
        let null2 = r2.module.null_space();
        let mut cols = t.column_vectors();
        cols.extend(null2);
        crate::linalg::rank_of(&cols, r2.dim()) == r2.dim()
    };
    Ok(Intertwiner {
        matrix: t.clone(),
        adjointable,
        isometric,
        unitary: isometric && onto,
    })
}

/// `z ∈ ℚ(i)` with `z̄z = c`, for rational `c > 0`, if a small one exists.
pub fn gaussian_root_of_norm(c: &FracScalar) -> Option<FracScalar> {
    if !c.is_rational() || !c.is_real() || c.sign() != Sign::Positive {
        return None;
    }
    let r = c.numerator().re.constant_term();
    let (p, q) = (r.numer().clone(), r.denom().clone());
    let target: BigInt = &p * &q;
    let limit = target.sqrt();
    let steps = limit.to_u64().unwrap_or(u64::MAX).min(2_000_000);
    let mut x = BigInt::zero();
    for _ in 0..=steps {
        let rest: BigInt = &target - &x * &x;
        if rest.is_negative() {
            break;
        }
        let y = rest.sqrt();
        if &y * &y == rest {
            let qf = FracScalar::from_rational(num_rational::BigRational::from_integer(q.clone()));
            let z = FracScalar::from(crate::rings::Scalar::new(
                crate::rings::BaseElement::from_rational(x.clone().into()),
                crate::rings::BaseElement::from_rational(y.into()),
            ));
            return z.checked_div(&qf).ok();
        }
        x += 1;
    }
    None
}

/// Rescale `T` so that `T^† G₂ T = G₁`, when `T^† G₂ T = c·G₁` with `c` a
/// norm from `ℚ(i)`.
fn normalize_isometry(t: &Matrix, g1: &Matrix, g2: &Matrix) -> Option<Matrix> {
    let m = &(&t.adjoint() * g2) * t;
    let (p, q) = (0..g1.rows())
        .flat_map(|p| (0..g1.cols()).map(move |q| (p, q)))
        .find(|&(p, q)| !g1[(p, q)].is_zero())?;
    let c = m[(p, q)].checked_div(&g1[(p, q)]).ok()?;
    if c.is_zero() || m != g1.scale(&c) {
        return None;
    }
    let z = gaussian_root_of_norm(&c)?;
    Some(t.scale(&z.inv().ok()?))
}

/// Intertwiner space, classification of its basis, and a bounded search for
/// a unitary element (basis elements, signed sums of up to four basis
/// elements, then seeded random combinations).
pub fn intertwiners(r1: &Representation, r2: &Representation, seed: u64) -> Result<IntertwinerSpace> {
    let basis = intertwiner_basis(r1, r2)?;
    let classified = basis
        .iter()
        .map(|t| classify(t, r1, r2))
        .collect::<Result<Vec<_>>>()?;
    let unitary = search_unitary(&basis, r1, r2, seed)?;
    Ok(IntertwinerSpace {
        basis,
        classified,
        unitary,
    })
}

pub fn search_unitary(
    basis: &[Matrix],
    r1: &Representation,
    r2: &Representation,
    seed: u64,
) -> Result<UnitarySearch> {
    let (d1, d2) = (
        r1.dim() - r1.module.null_space().len(),
        r2.dim() - r2.module.null_space().len(),
    );
    if d1 != d2 {
        return Ok(UnitarySearch::NoUnitary(format!("dimension mismatch: {d1} vs {d2}")));
    }
    if r1.dim() == 0 && r2.dim() == 0 {
        let t = Matrix::zeros(0, 0);
        return Ok(UnitarySearch::Found(classify(&t, r1, r2)?));
    }
    if basis.is_empty() {
        return Ok(UnitarySearch::NoUnitary("only the zero intertwiner exists".into()));
    }
    let (g1, g2) = (r1.gram(), r2.gram());
    let mut tried = 0usize;
    let attempt = |t: &Matrix, tried: &mut usize| -> Result<Option<Intertwiner>> {
        *tried += 1;
        if t.is_zero() || rank(t) < d2.min(t.cols()) {
            return Ok(None);
        }
        if let Some(u) = normalize_isometry(t, g1, g2) {
            let c = classify(&u, r1, r2)?;
            if c.unitary {
                return Ok(Some(c));
            }
        }
        Ok(None)
    };
    let k = basis.len();
    let max_support = k.min(4);
    const BUDGET: usize = 20_000;
    for support in 1..=max_support {
        let mut idx: Vec<usize> = (0..support).collect();
        loop {
            for signs in 0..(1u32 << (support - 1)) {
                let mut t = basis[idx[0]].clone();
                for (s, &b) in idx.iter().enumerate().skip(1) {
                    t = if signs & (1 << (s - 1)) == 0 {
                        &t + &basis[b]
                    } else {
                        &t - &basis[b]
                    };
                }
                if let Some(u) = attempt(&t, &mut tried)? {
                    return Ok(UnitarySearch::Found(u));
                }
                if tried >= BUDGET {
                    return Ok(UnitarySearch::Inconclusive { candidates_tried: tried });
                }
            }
            // next combination in lexicographic order
            let mut pos = support;
            while pos > 0 && idx[pos - 1] == k - support + pos - 1 {
                pos -= 1;
            }
            if pos == 0 {
                break;
            }
            idx[pos - 1] += 1;
            for j in pos..support {
                idx[j] = idx[j - 1] + 1;
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..200 {
        let mut t = Matrix::zeros(basis[0].rows(), basis[0].cols());
        for b in basis {
            let c = FracScalar::gaussian(rng.gen_range(-2..=2), rng.gen_range(-1..=1));
            if !c.is_zero() {
                t = &t + &b.scale(&c);
            }
        }
        if let Some(u) = attempt(&t, &mut tried)? {
            return Ok(UnitarySearch::Found(u));
        }
    }
    Ok(UnitarySearch::Inconclusive { candidates_tried: tried })
}
