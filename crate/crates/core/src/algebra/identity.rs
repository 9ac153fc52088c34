//! Units and approximate identities.

use super::star_algebra::StarAlgebra;
use crate::error::{Error, Result};
use crate::linalg::{solve, Matrix, Vector};
use crate::rings::FracScalar;

/// Increasing family `E_α` together with subspaces `A_α` (given by basis
/// indices) on which `E_α` acts as a two-sided unit.
#[derive(Clone, Debug, PartialEq)]
pub struct ApproxIdentityWitness {
    pub elements: Vec<Vector>,
    pub filtration: Vec<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct IdentityReport {
    pub unit: Option<Vector>,
    pub approximate_identity: Option<ApproxIdentityWitness>,
}

impl IdentityReport {
    pub fn has_identity_structure(&self) -> bool {
        self.unit.is_some() || self.approximate_identity.is_some()
    }
}

/// Two-sided unit, found by solving `u·e_j = e_j = e_j·u` for all `j`.
pub fn find_unit(alg: &StarAlgebra) -> Option<Vector> {
    let n = alg.dim();
    if n == 0 {
        return None;
    }
    // unknowns u_i; equations indexed by (side, j, k)
    let mut rows: Vec<Vec<FracScalar>> = Vec::with_capacity(2 * n * n);
    let mut rhs = Vec::with_capacity(2 * n * n);
    for j in 0..n {
        let left: Vec<Vector> = (0..n).map(|i| alg.mul_basis(i, j)).collect();
        let right: Vec<Vector> = (0..n).map(|i| alg.mul_basis(j, i)).collect();
        for k in 0..n {
            let target = if j == k { FracScalar::one() } else { FracScalar::zero() };
            rows.push((0..n).map(|i| left[i][k].clone()).collect());
            rhs.push(target.clone());
            rows.push((0..n).map(|i| right[i][k].clone()).collect());
            rhs.push(target);
        }
    }
    let m = Matrix::from_rows(rows).ok()?;
    solve(&m, &rhs).ok().flatten()
}

/// Unit detection plus exact validation of a supplied approximate identity.
pub fn identity_structure(
    alg: &StarAlgebra,
    witness: Option<&ApproxIdentityWitness>,
) -> Result<IdentityReport> {
    if let Some(w) = witness {
        validate_approx_identity(alg, w)?;
    }
    Ok(IdentityReport {
        unit: find_unit(alg),
        approximate_identity: witness.cloned(),
    })
}

pub fn validate_approx_identity(alg: &StarAlgebra, w: &ApproxIdentityWitness) -> Result<()> {
    let fail = |m: String| Err(Error::InvalidWitness(m));
    if w.elements.len() != w.filtration.len() || w.elements.is_empty() {
        return fail("one filtration subspace per element required".into());
    }
    for (a, e) in w.elements.iter().enumerate() {
        if e.len() != alg.dim() {
            return fail(format!("E_{a} has the wrong length"));
        }
        if alg.star(e) != *e {
            return fail(format!("E_{a} is not Hermitian"));
        }
        for (b, f) in w.elements.iter().enumerate().skip(a + 1) {
            if alg.mul(e, f) != *e || alg.mul(f, e) != *e {
                return fail(format!("E_{a} E_{b} = E_{a} = E_{b} E_{a} fails"));
            }
        }
        for &i in &w.filtration[a] {
            let x = alg.basis(i);
            if alg.mul(e, &x) != x || alg.mul(&x, e) != x {
                return fail(format!("E_{a} is not a unit on basis element {i}"));
            }
        }
        if a > 0 && !w.filtration[a - 1].iter().all(|i| w.filtration[a].contains(i)) {
            return fail(format!("filtration is not increasing at {a}"));
        }
    }
    let last = w.filtration.last().expect("nonempty");
    if let Some(missing) = (0..alg.dim()).find(|i| !last.contains(i)) {
        return fail(format!("basis element {missing} lies in no filtration subspace"));
    }
    Ok(())
}
