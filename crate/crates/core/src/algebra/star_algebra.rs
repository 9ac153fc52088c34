use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{
    basis_vector, combine, is_zero_vector, psd_decide, rank, solve_matrix, zero_vector, Matrix,
    Vector,
};
use crate::report::Report;
use crate::rings::FracScalar;

/// Tag describing how an algebra was produced.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", content = "n", rename_all = "snake_case")]
pub enum AlgebraKind {
    Generic,
    Matrix(usize),
    Grassmann(usize),
    Tensor,
    Corner,
}

/// Faithful *-representation of the algebra onto a full block-diagonal matrix
/// algebra `⊕ M_{k_i}` with the standard inner product. It lets positivity of
/// elements be decided exactly.
#[derive(Clone, Debug, PartialEq)]
pub struct MatrixModel {
    pub blocks: Vec<usize>,
    pub images: Vec<Matrix>,
}

impl MatrixModel {
    pub fn size(&self) -> usize {
        self.blocks.iter().sum()
    }

    /// Image of the element with coefficient vector `a`.
    pub fn image(&self, a: &[FracScalar]) -> Matrix {
        let n = self.size();
        let mut out = Matrix::zeros(n, n);
        for (c, m) in a.iter().zip(&self.images) {
            if !c.is_zero() {
                out = &out + &m.scale(c);
            }
        }
        out
    }
}

/// Finite-dimensional *-algebra over `Ĉ` given by structure constants.
///
/// `e_i · e_j = Σ_k μ(i,j)_k e_k` is stored sparsely; the involution is the
/// antilinear extension of `e_i ↦ star(i)`.
#[derive(Clone)]
pub struct StarAlgebra {
    dim: usize,
    mul: Vec<Vec<(usize, FracScalar)>>,
    star: Vec<Vector>,
    labels: Vec<String>,
    kind: AlgebraKind,
    model: Option<MatrixModel>,
}

impl PartialEq for StarAlgebra {
    fn eq(&self, other: &Self) -> bool {
        self.dim == other.dim && self.mul == other.mul && self.star == other.star
    }
}

impl fmt::Debug for StarAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("StarAlgebra")
            .field("dim", &self.dim)
            .field("kind", &self.kind)
            .field("labels", &self.labels)
            .finish()
    }
}

fn sparse(v: &[FracScalar]) -> Vec<(usize, FracScalar)> {
    v.iter()
        .enumerate()
        .filter(|(_, x)| !x.is_zero())
        .map(|(k, x)| (k, x.clone()))
        .collect()
}

impl StarAlgebra {
    /// Build from dense structure constants `mul[i][j]` and star images.
    pub fn new(mul: Vec<Vec<Vector>>, star: Vec<Vector>) -> Result<Self> {
        let dim = star.len();
        if mul.len() != dim
            || mul.iter().any(|row| row.len() != dim || row.iter().any(|v| v.len() != dim))
            || star.iter().any(|v| v.len() != dim)
        {
            return Err(Error::ShapeMismatch(format!(
                "structure constants do not match dimension {dim}"
            )));
        }
        Ok(StarAlgebra {
            dim,
            mul: mul.iter().flat_map(|row| row.iter().map(|v| sparse(v))).collect(),
            star,
            labels: (0..dim).map(|i| format!("b{}", i + 1)).collect(),
            kind: AlgebraKind::Generic,
            model: None,
        })
    }

    /// Build from a product closure on basis indices.
    pub fn from_fn(
        dim: usize,
        mut product: impl FnMut(usize, usize) -> Vector,
        mut star: impl FnMut(usize) -> Vector,
    ) -> Self {
        let mut mul = Vec::with_capacity(dim * dim);
        for i in 0..dim {
            for j in 0..dim {
                mul.push(sparse(&product(i, j)));
            }
        }
        StarAlgebra {
            dim,
            mul,
            star: (0..dim).map(&mut star).collect(),
            labels: (0..dim).map(|i| format!("b{}", i + 1)).collect(),
            kind: AlgebraKind::Generic,
            model: None,
        }
    }

    /// The *-algebra spanned by linearly independent matrices closed under
    /// multiplication and under `adjoint`.
    pub fn from_operator_basis(
        basis: &[Matrix],
        adjoint: impl Fn(&Matrix) -> Matrix,
    ) -> Result<Self> {
        let dim = basis.len();
        let Some(first) = basis.first() else {
            return Ok(StarAlgebra::from_fn(0, |_, _| Vec::new(), |_| Vec::new()));
        };
        let len = first.rows() * first.cols();
        let flat = |m: &Matrix| m.entries().to_vec();
        let columns: Vec<Vector> = basis.iter().map(flat).collect();
        let a = Matrix::from_columns(len, &columns);
        if rank(&a) != dim {
            return Err(Error::DegenerateRiggedModule(
                "operator basis is linearly dependent".into(),
            ));
        }
        let mut targets = Vec::with_capacity(dim * dim + dim);
        for x in basis {
            for y in basis {
                targets.push(flat(&(x * y)));
            }
        }
        for x in basis {
            targets.push(flat(&adjoint(x)));
        }
        let coords = solve_matrix(&a, &Matrix::from_columns(len, &targets))?.ok_or_else(|| {
            Error::DegenerateRiggedModule("operator span is not closed under product or adjoint".into())
        })?;
        let mul = (0..dim * dim).map(|t| sparse(&coords.column(t))).collect();
        let star = (0..dim).map(|t| coords.column(dim * dim + t)).collect();
        Ok(StarAlgebra {
            dim,
            mul,
            star,
            labels: (0..dim).map(|i| format!("b{}", i + 1)).collect(),
            kind: AlgebraKind::Generic,
            model: None,
        })
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Self {
        if labels.len() == self.dim {
            self.labels = labels;
        }
        self
    }

    pub fn with_kind(mut self, kind: AlgebraKind) -> Self {
        self.kind = kind;
        self
    }

    /// Attach a matrix model after checking that it is an injective
    /// *-homomorphism onto the full block-diagonal algebra.
    pub fn with_model(mut self, model: MatrixModel) -> Result<Self> {
        let n = model.size();
        let bad = |m: String| Err(Error::NotStarHomomorphism(m));
        if model.images.len() != self.dim || model.images.iter().any(|m| m.rows() != n || m.cols() != n) {
            return bad("model image count or size mismatch".into());
        }
        if model.blocks.iter().map(|k| k * k).sum::<usize>() != self.dim {
            return bad("algebra dimension differs from the block algebra".into());
        }
        let offsets: Vec<usize> = model
            .blocks
            .iter()
            .scan(0, |acc, k| {
                let o = *acc;
                *acc += k;
                Some(o)
            })
            .collect();
        let block_of = |i: usize| offsets.iter().rposition(|&o| o <= i).unwrap_or(0);
        for (idx, m) in model.images.iter().enumerate() {
            for i in 0..n {
                for j in 0..n {
                    if block_of(i) != block_of(j) && !m[(i, j)].is_zero() {
                        return bad(format!("image of basis {idx} leaves the block pattern"));
                    }
                }
            }
        }
        let flat: Vec<Vector> = model.images.iter().map(|m| m.entries().to_vec()).collect();
        if rank(&Matrix::from_columns(n * n, &flat)) != self.dim {
            return bad("model is not injective".into());
        }
        for i in 0..self.dim {
            if model.image(&self.star[i]) != model.images[i].adjoint() {
                return bad(format!("model does not intertwine the star of basis {i}"));
            }
            for j in 0..self.dim {
                if model.image(&self.mul_basis(i, j)) != &model.images[i] * &model.images[j] {
                    return bad(format!("model is not multiplicative on ({i},{j})"));
                }
            }
        }
        self.model = Some(model);
        Ok(self)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn kind(&self) -> &AlgebraKind {
        &self.kind
    }

    pub fn model(&self) -> Option<&MatrixModel> {
        self.model.as_ref()
    }

    /// Matrix-kind algebras have an exact positivity decision.
    pub fn is_matrix_kind(&self) -> bool {
        self.model.is_some()
    }

    pub fn basis(&self, i: usize) -> Vector {
        basis_vector(self.dim, i)
    }

    pub fn zero(&self) -> Vector {
        zero_vector(self.dim)
    }

    pub fn mul_basis(&self, i: usize, j: usize) -> Vector {
        let mut v = self.zero();
        for (k, c) in &self.mul[i * self.dim + j] {
            v[*k] = c.clone();
        }
        v
    }

    pub fn mul_basis_sparse(&self, i: usize, j: usize) -> &[(usize, FracScalar)] {
        &self.mul[i * self.dim + j]
    }

    pub fn star_basis(&self, i: usize) -> &Vector {
        &self.star[i]
    }

    pub fn mul(&self, a: &[FracScalar], b: &[FracScalar]) -> Vector {
        let mut out = self.zero();
        for (i, x) in a.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
            for (j, y) in b.iter().enumerate().filter(|(_, y)| !y.is_zero()) {
                let xy = x * y;
                for (k, c) in &self.mul[i * self.dim + j] {
                    out[*k] = &out[*k] + &(&xy * c);
                }
            }
        }
        out
    }

    pub fn star(&self, a: &[FracScalar]) -> Vector {
        let conj: Vec<FracScalar> = a.iter().map(FracScalar::conj).collect();
        combine(&conj, &self.star, self.dim)
    }

    pub fn is_hermitian(&self, a: &[FracScalar]) -> bool {
        self.star(a) == a
    }

    pub fn pow(&self, a: &[FracScalar], k: u32) -> Option<Vector> {
        let mut acc: Option<Vector> = None;
        for _ in 0..k {
            acc = Some(match acc {
                None => a.to_vec(),
                Some(p) => self.mul(&p, a),
            });
        }
        acc
    }

    /// Matrix of `x ↦ a·x` in the basis.
    pub fn left_mult(&self, a: &[FracScalar]) -> Matrix {
        let cols: Vec<Vector> = (0..self.dim).map(|j| self.mul(a, &self.basis(j))).collect();
        Matrix::from_columns(self.dim, &cols)
    }

    /// Matrix of `x ↦ x·a` in the basis.
    pub fn right_mult(&self, a: &[FracScalar]) -> Matrix {
        let cols: Vec<Vector> = (0..self.dim).map(|j| self.mul(&self.basis(j), a)).collect();
        Matrix::from_columns(self.dim, &cols)
    }

    /// The *-subalgebra with the given (independent) basis, in its own
    /// coordinates. Fails if the span is not closed under product and star.
    pub fn subalgebra(&self, basis: &[Vector]) -> Result<StarAlgebra> {
        let k = basis.len();
        if k == 0 {
            return Ok(StarAlgebra::from_fn(0, |_, _| Vec::new(), |_| Vec::new()));
        }
        let span = Matrix::from_columns(self.dim, basis);
        if rank(&span) != k {
            return Err(Error::BadParams("subalgebra basis is linearly dependent".into()));
        }
        let mut targets = Vec::with_capacity(k * k + k);
        for x in basis {
            for y in basis {
                targets.push(self.mul(x, y));
            }
        }
        for x in basis {
            targets.push(self.star(x));
        }
        let coords = solve_matrix(&span, &Matrix::from_columns(self.dim, &targets))?
            .ok_or_else(|| Error::BadParams("span is not a *-subalgebra".into()))?;
        let mul = (0..k * k).map(|t| sparse(&coords.column(t))).collect();
        let star = (0..k).map(|t| coords.column(k * k + t)).collect();
        Ok(StarAlgebra {
            dim: k,
            mul,
            star,
            labels: (0..k).map(|i| format!("b{}", i + 1)).collect(),
            kind: AlgebraKind::Generic,
            model: None,
        })
    }

    /// Basis of the center `{z : z e_j = e_j z ∀j}`.
    pub fn center_basis(&self) -> Vec<Vector> {
        let n = self.dim;
        let mut rows = Vec::with_capacity(n * n);
        for j in 0..n {
            let diff = &self.left_mult(&self.basis(j)) - &self.right_mult(&self.basis(j));
            rows.extend(diff.row_vectors());
        }
        if rows.is_empty() {
            return Vec::new();
        }
        // rows of (e_j · −) − (− · e_j), stacked over j
        crate::linalg::kernel_basis(&Matrix::from_rows(rows).expect("rectangular"))
    }

    /// Associativity and involution axioms on all basis triples and pairs.
    pub fn validate(&self) -> Report {
        let mut report = Report::new();
        report.push("associativity", self.check_associativity());
        report.push("involution", self.check_involution());
        report
    }

    fn check_associativity(&self) -> std::result::Result<(), String> {
        for i in 0..self.dim {
            for j in 0..self.dim {
                let ij = self.mul_basis(i, j);
                for k in 0..self.dim {
                    let left = self.mul(&ij, &self.basis(k));
                    let right = self.mul(&self.basis(i), &self.mul_basis(j, k));
                    if left != right {
                        return Err(format!(
                            "(e{i} e{j}) e{k} ≠ e{i} (e{j} e{k}) at basis triple ({i},{j},{k})"
                        ));
                    }
                }
            }
        }
        Ok(())
    }

    fn check_involution(&self) -> std::result::Result<(), String> {
        for i in 0..self.dim {
            if self.star(&self.star[i]) != self.basis(i) {
                return Err(format!("star(star(e{i})) ≠ e{i}"));
            }
        }
        for i in 0..self.dim {
            for j in 0..self.dim {
                let lhs = self.star(&self.mul_basis(i, j));
                let rhs = self.mul(&self.star[j], &self.star[i]);
                if lhs != rhs {
                    return Err(format!("star(e{i} e{j}) ≠ star(e{j}) star(e{i}) at ({i},{j})"));
                }
            }
        }
        Ok(())
    }

    /// Entrywise `λ ↦ 0` on structure constants and involution.
    pub fn classical_limit(&self) -> Result<StarAlgebra> {
        let lim = |v: &[(usize, FracScalar)]| -> Result<Vec<(usize, FracScalar)>> {
            Ok(v.iter()
                .map(|(k, c)| Ok((*k, c.classical_limit()?)))
                .collect::<Result<Vec<_>>>()?
                .into_iter()
                .filter(|(_, c)| !c.is_zero())
                .collect())
        };
        let model = match &self.model {
            Some(m) => Some(MatrixModel {
                blocks: m.blocks.clone(),
                images: m
                    .images
                    .iter()
                    .map(Matrix::classical_limit)
                    .collect::<Result<_>>()?,
            }),
            None => None,
        };
        let out = StarAlgebra {
            dim: self.dim,
            mul: self.mul.iter().map(|v| lim(v)).collect::<Result<_>>()?,
            star: self
                .star
                .iter()
                .map(|v| v.iter().map(FracScalar::classical_limit).collect())
                .collect::<Result<_>>()?,
            labels: self.labels.clone(),
            kind: self.kind.clone(),
            model: None,
        };
        Ok(match model {
            Some(m) => out.clone().with_model(m).unwrap_or(out),
            None => out,
        })
    }

    /// True when no structure constant involves λ.
    pub fn is_rational(&self) -> bool {
        self.mul.iter().flatten().all(|(_, c)| c.is_rational())
            && self.star.iter().flatten().all(FracScalar::is_rational)
    }

    /// Same structure constants and involution in the same basis.
    pub fn same_structure(&self, other: &StarAlgebra) -> bool {
        self == other
    }

    /// Decide whether a Hermitian element lies in `A⁺` via the matrix model.
    pub fn model_psd(&self, a: &[FracScalar]) -> Option<Result<crate::linalg::PsdCertificate>> {
        self.model.as_ref().map(|m| psd_decide(&m.image(a)))
    }

    pub fn is_zero_element(&self, a: &[FracScalar]) -> bool {
        is_zero_vector(a)
    }
}
