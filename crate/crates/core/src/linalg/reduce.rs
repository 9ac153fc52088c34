//! Exact row reduction over `Ĉ`: ranks, kernels, solves, inverses and
//! quotients of `Ĉⁿ` by subspaces. Pivots are always the first nonzero entry,
//! so every basis produced here is deterministic.

use super::matrix::{is_zero_vector, zero_vector, Matrix, Vector};
use crate::error::{Error, Result};
use crate::rings::FracScalar;

/// Reduced row echelon form with its pivot columns.
#[derive(Clone, Debug)]
pub struct Rref {
    pub matrix: Matrix,
    pub pivots: Vec<usize>,
}

impl Rref {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }
}

/// Reduced row echelon form. Only the first `limit` columns are used as pivot
/// candidates (all columns when `limit` is `None`).
pub fn rref_limited(m: &Matrix, limit: Option<usize>) -> Rref {
    let mut rows: Vec<Vector> = m.row_vectors();
    let cols = m.cols();
    let limit = limit.unwrap_or(cols).min(cols);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..limit {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][c].inv().expect("nonzero pivot");
        if !inv.is_one() {
            for x in rows[r].iter_mut().skip(c) {
                if !x.is_zero() {
                    *x = &*x * &inv;
                }
            }
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (x, p) in row.iter_mut().zip(&pivot_row).skip(c) {
                if !p.is_zero() {
                    *x = &*x - &(&f * p);
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    Rref {
        matrix: if rows.is_empty() {
            Matrix::zeros(0, cols)
        } else {
            Matrix::from_rows(rows).expect("rectangular rows")
        },
        pivots,
    }
}

pub fn rref(m: &Matrix) -> Rref {
    rref_limited(m, None)
}

pub fn rank(m: &Matrix) -> usize {
    rref(m).rank()
}

/// Rank of a family of vectors of common length `len`.
pub fn rank_of(vectors: &[Vector], len: usize) -> usize {
    if vectors.is_empty() {
        return 0;
    }
    rank(&rows_matrix(vectors, len))
}

fn rows_matrix(vectors: &[Vector], len: usize) -> Matrix {
    if vectors.is_empty() {
        return Matrix::zeros(0, len);
    }
    Matrix::from_rows(vectors.to_vec()).expect("equal-length vectors")
}

/// Basis of the right kernel `{v : M·v = 0}`; one vector per free column,
/// with a `1` in that column.
pub fn kernel_basis(m: &Matrix) -> Vec<Vector> {
    let red = rref(m);
    let n = m.cols();
    let mut basis = Vec::new();
    let mut pivot_iter = red.pivots.iter().peekable();
    for f in 0..n {
        if pivot_iter.peek() == Some(&&f) {
            pivot_iter.next();
            continue;
        }
        let mut v = zero_vector(n);
        v[f] = FracScalar::one();
        for (r, &p) in red.pivots.iter().enumerate() {
            let x = &red.matrix[(r, f)];
            if !x.is_zero() {
                v[p] = -x;
            }
        }
        basis.push(v);
    }
    basis
}

/// A particular solution of `M·x = b`, or `None` when inconsistent.
pub fn solve(m: &Matrix, b: &[FracScalar]) -> Result<Option<Vector>> {
    if b.len() != m.rows() {
        return Err(Error::ShapeMismatch(format!(
            "right-hand side of length {} for {} rows",
            b.len(),
            m.rows()
        )));
    }
    let aug = Matrix::from_fn(m.rows(), m.cols() + 1, |i, j| {
        if j < m.cols() {
            m[(i, j)].clone()
        } else {
            b[i].clone()
        }
    });
    let red = rref(&aug);
    if red.pivots.last() == Some(&m.cols()) {
        return Ok(None);
    }
    let mut x = zero_vector(m.cols());
    for (r, &p) in red.pivots.iter().enumerate() {
        x[p] = red.matrix[(r, m.cols())].clone();
    }
    Ok(Some(x))
}

/// Solve `M·X = B` column by column; `None` if any column is inconsistent.
pub fn solve_matrix(m: &Matrix, b: &Matrix) -> Result<Option<Matrix>> {
    if b.rows() != m.rows() {
        return Err(Error::ShapeMismatch("solve_matrix row counts differ".into()));
    }
    let aug = Matrix::hstack(&[m, b])?;
    let red = rref_limited(&aug, Some(m.cols()));
    // rows below the rank must vanish on the right-hand block
    for r in red.rank()..red.matrix.rows() {
        if (m.cols()..aug.cols()).any(|c| !red.matrix[(r, c)].is_zero()) {
            return Ok(None);
        }
    }
    let mut x = Matrix::zeros(m.cols(), b.cols());
    for (r, &p) in red.pivots.iter().enumerate() {
        for j in 0..b.cols() {
            x[(p, j)] = red.matrix[(r, m.cols() + j)].clone();
        }
    }
    Ok(Some(x))
}

pub fn inverse(m: &Matrix) -> Result<Matrix> {
    if !m.is_square() {
        return Err(Error::ShapeMismatch("inverse of a non-square matrix".into()));
    }
    let n = m.rows();
    let aug = Matrix::hstack(&[m, &Matrix::identity(n)])?;
    let red = rref_limited(&aug, Some(n));
    if red.rank() < n {
        return Err(Error::DivisionByZero);
    }
    Ok(red.matrix.submatrix(&(0..n).collect::<Vec<_>>(), &(n..2 * n).collect::<Vec<_>>()))
}

/// Indices of a maximal linearly independent subfamily, greedily in order.
pub fn independent_subset(vectors: &[Vector], len: usize) -> Vec<usize> {
    let m = Matrix::from_columns(len, vectors);
    rref(&m).pivots
}

/// Coordinates of `v` in the span of `basis` (assumed independent), if any.
pub fn coordinates_in(basis: &[Vector], v: &[FracScalar]) -> Option<Vector> {
    let m = Matrix::from_columns(v.len(), basis);
    solve(&m, v).ok().flatten()
}

/// The quotient `Ĉⁿ / S` for a subspace `S`, realized with the non-pivot
/// coordinates of `S`'s echelon basis.
///
/// `proj` is `q×n` with `ker proj = S`; `lift` is `n×q` with
/// `proj·lift = 1`.
#[derive(Clone, Debug)]
pub struct Quotient {
    pub ambient: usize,
    pub proj: Matrix,
    pub lift: Matrix,
    /// Echelon basis of the subspace that was divided out.
    pub kernel: Vec<Vector>,
}

impl Quotient {
    pub fn dim(&self) -> usize {
        self.proj.rows()
    }

    pub fn by_span(ambient: usize, generators: &[Vector]) -> Quotient {
        let gens: Vec<Vector> = generators.iter().filter(|g| !is_zero_vector(g)).cloned().collect();
        let red = rref(&rows_matrix(&gens, ambient));
        let pivots = &red.pivots;
        let kept: Vec<usize> = (0..ambient).filter(|c| !pivots.contains(c)).collect();
        let mut proj = Matrix::zeros(kept.len(), ambient);
        let mut lift = Matrix::zeros(ambient, kept.len());
        for (q, &j) in kept.iter().enumerate() {
            proj[(q, j)] = FracScalar::one();
            lift[(j, q)] = FracScalar::one();
            for (r, &p) in pivots.iter().enumerate() {
                let x = &red.matrix[(r, j)];
                if !x.is_zero() {
                    proj[(q, p)] = -x;
                }
            }
        }
        let kernel = (0..red.rank()).map(|r| red.matrix.row_vec(r)).collect();
        Quotient {
            ambient,
            proj,
            lift,
            kernel,
        }
    }

    pub fn identity(ambient: usize) -> Quotient {
        Quotient::by_span(ambient, &[])
    }

    pub fn project(&self, v: &[FracScalar]) -> Vector {
        self.proj.apply(v)
    }

    /// Operator `M` on the ambient space pushed down to the quotient. Assumes
    /// (and checks) that `M` maps the subspace into itself.
    pub fn descend(&self, m: &Matrix) -> Result<Matrix> {
        for k in &self.kernel {
            if !is_zero_vector(&self.proj.apply(&m.apply(k))) {
                return Err(Error::ShapeMismatch(
                    "operator does not preserve the subspace".into(),
                ));
            }
        }
        let pm = self.proj.checked_mul(m)?;
        pm.checked_mul(&self.lift)
    }

    /// Gram matrix of the classes of the lifted basis.
    pub fn descend_form(&self, g: &Matrix) -> Matrix {
        let lg = &self.lift.adjoint() * g;
        &lg * &self.lift
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kernels() {
        let m = Matrix::from_ints(&[&[1, 0], &[0, 0]]);
        assert_eq!(kernel_basis(&m), vec![vec![FracScalar::zero(), FracScalar::one()]]);
        assert!(kernel_basis(&Matrix::identity(2)).is_empty());
        let row = Matrix::from_rows(vec![vec![FracScalar::one(), FracScalar::lambda()]]).unwrap();
        assert_eq!(kernel_basis(&row), vec![vec![-FracScalar::lambda(), FracScalar::one()]]);
    }

    #[test]
    fn inconsistent_solve() {
        let m = Matrix::from_ints(&[&[1, 0], &[0, 0]]);
        let b = vec![FracScalar::zero(), FracScalar::one()];
        assert_eq!(solve(&m, &b).unwrap(), None);
        let b = vec![FracScalar::from_int(4), FracScalar::zero()];
        assert_eq!(solve(&m, &b).unwrap(), Some(vec![FracScalar::from_int(4), FracScalar::zero()]));
    }

    #[test]
    fn inverse_round_trip() {
        let m = Matrix::from_rows(vec![
            vec![FracScalar::one(), FracScalar::lambda()],
            vec![FracScalar::i(), FracScalar::from_int(2)],
        ])
        .unwrap();
        let inv = inverse(&m).unwrap();
        assert!((&m * &inv).is_identity());
        assert!(inverse(&Matrix::from_ints(&[&[1, 1], &[1, 1]])).is_err());
    }

    #[test]
    fn quotient_by_line() {
        let s = vec![vec![FracScalar::one(), FracScalar::one(), FracScalar::zero()]];
        let q = Quotient::by_span(3, &s);
        assert_eq!(q.dim(), 2);
        assert!((&q.proj * &q.lift).is_identity());
        assert!(is_zero_vector(&q.project(&s[0])));
    }

    #[test]
    fn matrix_solve() {
        let m = Matrix::from_ints(&[&[2, 0], &[0, 3]]);
        let b = Matrix::from_ints(&[&[4, 2], &[3, 9]]);
        let x = solve_matrix(&m, &b).unwrap().unwrap();
        assert_eq!(&m * &x, b);
    }
}
