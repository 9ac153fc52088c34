use std::sync::Arc;

use super::cyclic::CyclicStructure;
use crate::algebra::{functional_positivity, verify_sum_of_squares, LinearFunctional, StarAlgebra};
use crate::error::{Error, Result};
use crate::linalg::{psd_decide, rank_of, Matrix, Vector};
use crate::report::Report;
use crate::rings::FracScalar;

/// Algebra-valued sesquilinear data `h(p,q)` on a module basis.
pub type InnerTensor = Vec<Vec<Vector>>;

/// A (B-A)-bimodule on `Cᵐ`.
///
/// The left action is `b·x = L(b) x`, the right action `x·a = R(a) x`, so that
/// `R(a a') = R(a') R(a)`. The A-valued product is antilinear in its first
/// argument, `⟨x, y⟩_A = Σ conj(x_p) y_q hA(p,q)`; the B-valued product is
/// antilinear in its second, `_B⟨x, y⟩ = Σ x_p conj(y_q) hB(p,q)`.
#[derive(Clone, Debug)]
pub struct Bimodule {
    pub b: Arc<StarAlgebra>,
    pub a: Arc<StarAlgebra>,
    pub dim: usize,
    pub left: Vec<Matrix>,
    pub right: Vec<Matrix>,
    pub inner_a: InnerTensor,
    pub inner_b: Option<InnerTensor>,
    /// Decomposition witness for the right action (orthogonal under `⟨·,·⟩_A`).
    pub cyclic_p: Option<CyclicStructure>,
    /// Decomposition witness for the left action (orthogonal under `_B⟨·,·⟩`).
    pub cyclic_q: Option<CyclicStructure>,
}

/// How much of the structure to validate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Level {
    #[default]
    Rigged,
    Equivalence,
}

/// Extra evidence for the positivity axioms when an algebra has no matrix
/// model.
#[derive(Clone, Debug, Default)]
pub struct ValidationOptions {
    pub level: Level,
    /// Positive functionals on `A` to pair the A-valued product against.
    pub functionals_a: Vec<LinearFunctional>,
    pub functionals_b: Vec<LinearFunctional>,
    /// Sum-of-squares witnesses `⟨e_p, e_p⟩_A = Σ b_i B_i* B_i`, per basis vector.
    pub squares_a: Option<Vec<Vec<(FracScalar, Vector)>>>,
    pub squares_b: Option<Vec<Vec<(FracScalar, Vector)>>>,
}

impl ValidationOptions {
    pub fn level(level: Level) -> Self {
        ValidationOptions {
            level,
            ..Default::default()
        }
    }
}

fn check_tensor(h: &InnerTensor, m: usize, n: usize, what: &str) -> Result<()> {
    if h.len() != m || h.iter().any(|row| row.len() != m || row.iter().any(|v| v.len() != n)) {
        return Err(Error::ShapeMismatch(format!(
            "{what} must be {m}×{m} vectors of length {n}"
        )));
    }
    Ok(())
}

fn check_ops(ops: &[Matrix], count: usize, m: usize, what: &str) -> Result<()> {
    if ops.len() != count || ops.iter().any(|o| o.rows() != m || o.cols() != m) {
        return Err(Error::ShapeMismatch(format!(
            "{what} needs {count} matrices of size {m}"
        )));
    }
    Ok(())
}

/// `Σ c_i M_i`.
pub(crate) fn linear_op(coeffs: &[FracScalar], ops: &[Matrix], m: usize) -> Matrix {
    let mut out = Matrix::zeros(m, m);
    for (c, o) in coeffs.iter().zip(ops) {
        if !c.is_zero() {
            out = &out + &o.scale(c);
        }
    }
    out
}

/// `Σ w(p,q) h(p,q)` over all pairs with nonzero weight.
fn contract(h: &InnerTensor, n: usize, weight: impl Fn(usize, usize) -> FracScalar) -> Vector {
    let mut out = vec![FracScalar::zero(); n];
    for (p, row) in h.iter().enumerate() {
        for (q, v) in row.iter().enumerate() {
            let w = weight(p, q);
            if w.is_zero() {
                continue;
            }
            for (o, x) in out.iter_mut().zip(v) {
                if !x.is_zero() {
                    *o = &*o + &(&w * x);
                }
            }
        }
    }
    out
}

impl Bimodule {
    /// Shape-checked constructor; axioms are checked by [`Bimodule::validate`].
    pub fn new(
        b: Arc<StarAlgebra>,
        a: Arc<StarAlgebra>,
        left: Vec<Matrix>,
        right: Vec<Matrix>,
        inner_a: InnerTensor,
    ) -> Result<Self> {
        let dim = inner_a.len();
        check_ops(&left, b.dim(), dim, "left action")?;
        check_ops(&right, a.dim(), dim, "right action")?;
        check_tensor(&inner_a, dim, a.dim(), "A-valued product")?;
        Ok(Bimodule {
            b,
            a,
            dim,
            left,
            right,
            inner_a,
            inner_b: None,
            cyclic_p: None,
            cyclic_q: None,
        })
    }

    pub fn with_inner_b(mut self, inner_b: InnerTensor) -> Result<Self> {
        check_tensor(&inner_b, self.dim, self.b.dim(), "B-valued product")?;
        self.inner_b = Some(inner_b);
        Ok(self)
    }

    pub fn with_cyclic_p(mut self, c: CyclicStructure) -> Self {
        self.cyclic_p = Some(c);
        self
    }

    pub fn with_cyclic_q(mut self, c: CyclicStructure) -> Self {
        self.cyclic_q = Some(c);
        self
    }

    /// `L(b)` for an element `b` of B.
    pub fn left_op(&self, b: &[FracScalar]) -> Matrix {
        linear_op(b, &self.left, self.dim)
    }

    /// `R(a)` for an element `a` of A.
    pub fn right_op(&self, a: &[FracScalar]) -> Matrix {
        linear_op(a, &self.right, self.dim)
    }

    pub fn inner_a(&self, x: &[FracScalar], y: &[FracScalar]) -> Vector {
        contract(&self.inner_a, self.a.dim(), |p, q| &x[p].conj() * &y[q])
    }

    pub fn inner_b(&self, x: &[FracScalar], y: &[FracScalar]) -> Option<Vector> {
        self.inner_b
            .as_ref()
            .map(|h| contract(h, self.b.dim(), |p, q| &x[p] * &y[q].conj()))
    }

    fn require_inner_b(&self) -> Result<&InnerTensor> {
        self.inner_b.as_ref().ok_or(Error::MissingInnerB)
    }

    /// Candidates used by cyclic auto-search: the module basis vectors.
    pub fn basis_candidates(&self) -> Vec<Vector> {
        (0..self.dim).map(|p| crate::linalg::basis_vector(self.dim, p)).collect()
    }

    /// Search for P1–P3 and Q1–Q3 witnesses among basis vectors and fill in
    /// whichever are missing.
    pub fn with_auto_cyclic(mut self) -> Self {
        let candidates = self.basis_candidates();
        if self.cyclic_p.is_none() {
            self.cyclic_p = CyclicStructure::search(self.dim, &self.right, &candidates, |u, v| {
                self.inner_a(u, v)
            });
        }
        if self.cyclic_q.is_none() && self.inner_b.is_some() {
            self.cyclic_q = CyclicStructure::search(self.dim, &self.left, &candidates, |u, v| {
                self.inner_b(u, v).expect("checked")
            });
        }
        self
    }

    /// Full axiom report. See [`ValidationOptions`] for the positivity regimes.
    pub fn validate(&self, opts: &ValidationOptions) -> Report {
        let mut r = Report::new();
        r.push("left_action", self.check_left_action());
        r.push("right_action", self.check_right_action());
        r.push("actions_commute", self.check_commute());
        r.pass("X1").with_regime("sesquilinear by representation");
        r.push("X2", hermitian_symmetric(&self.a, &self.inner_a, "hA"));
        r.push("X3", self.check_x3());
        let (x4, regime) = positivity(
            &self.a,
            &self.inner_a,
            &opts.functionals_a,
            opts.squares_a.as_deref(),
        );
        r.push("X4", x4).with_regime(regime);
        r.push("X5", self.check_x5());
        r.push("X6", full(&self.inner_a, self.a.dim(), "⟨·,·⟩_A"));
        if opts.level == Level::Rigged {
            return r;
        }
        let Some(hb) = self.inner_b.as_ref() else {
            r.fail("Y", "no B-valued product supplied");
            return r;
        };
        r.pass("Y1").with_regime("sesquilinear by representation");
        r.push("Y2", hermitian_symmetric(&self.b, hb, "hB"));
        r.push("Y3", self.check_y3(hb));
        let (y4, regime) = positivity(&self.b, hb, &opts.functionals_b, opts.squares_b.as_deref());
        r.push("Y4", y4).with_regime(regime);
        r.push("Y5", self.check_y5(hb));
        r.push("Y6", full(hb, self.b.dim(), "_B⟨·,·⟩"));
        r.push("E3", self.check_e3(hb));
        match &self.cyclic_p {
            Some(c) => {
                let checks = c.check(self.dim, &self.right, |u, v| self.inner_a(u, v));
                r.push("P1", checks.orthogonal_sum);
                r.push("P2", checks.invariant);
                r.push("P3", checks.pseudo_cyclic);
            }
            None => {
                r.fail("P1", "no witness for the right action");
            }
        }
        match &self.cyclic_q {
            Some(c) => {
                let checks = c.check(self.dim, &self.left, |u, v| self.inner_b(u, v).expect("present"));
                r.push("Q1", checks.orthogonal_sum);
                r.push("Q2", checks.invariant);
                r.push("Q3", checks.pseudo_cyclic);
            }
            None => {
                r.fail("Q1", "no witness for the left action");
            }
        }
        r
    }

    fn check_left_action(&self) -> std::result::Result<(), String> {
        let b = &self.b;
        for i in 0..b.dim() {
            for j in 0..b.dim() {
                if &self.left[i] * &self.left[j] != self.left_op(&b.mul_basis(i, j)) {
                    return Err(format!("L(e{i})L(e{j}) ≠ L(e{i}e{j})"));
                }
            }
        }
        Ok(())
    }

    fn check_right_action(&self) -> std::result::Result<(), String> {
        let a = &self.a;
        for i in 0..a.dim() {
            for j in 0..a.dim() {
                if &self.right[j] * &self.right[i] != self.right_op(&a.mul_basis(i, j)) {
                    return Err(format!("(x·e{i})·e{j} ≠ x·(e{i}e{j})"));
                }
            }
        }
        Ok(())
    }

    fn check_commute(&self) -> std::result::Result<(), String> {
        for (i, l) in self.left.iter().enumerate() {
            for (j, rr) in self.right.iter().enumerate() {
                if l * rr != rr * l {
                    return Err(format!("L(b{i}) and R(a{j}) do not commute"));
                }
            }
        }
        Ok(())
    }

    /// `⟨e_p, e_q·e_i⟩_A = ⟨e_p, e_q⟩_A e_i`.
    fn check_x3(&self) -> std::result::Result<(), String> {
        let m = self.dim;
        for i in 0..self.a.dim() {
            for q in 0..m {
                let yq = self.right[i].column(q);
                for p in 0..m {
                    let lhs = contract_row(&self.inner_a, p, &yq, self.a.dim());
                    let rhs = self.a.mul(&self.inner_a[p][q], &self.a.basis(i));
                    if lhs != rhs {
                        return Err(format!("⟨x{p}, x{q}·a{i}⟩ ≠ ⟨x{p}, x{q}⟩ a{i}"));
                    }
                }
            }
        }
        Ok(())
    }

    /// `⟨e_p, b·e_q⟩_A = ⟨b*·e_p, e_q⟩_A` on basis elements `b`.
    fn check_x5(&self) -> std::result::Result<(), String> {
        let m = self.dim;
        let n = self.a.dim();
        for i in 0..self.b.dim() {
            let l_star = self.left_op(self.b.star_basis(i));
            for p in 0..m {
                let bp = l_star.column(p);
                for q in 0..m {
                    let lhs = contract_row(&self.inner_a, p, &self.left[i].column(q), n);
                    let rhs = contract(&self.inner_a, n, |s, t| {
                        if t == q {
                            bp[s].conj()
                        } else {
                            FracScalar::zero()
                        }
                    });
                    if lhs != rhs {
                        return Err(format!("⟨x{p}, b{i}·x{q}⟩ ≠ ⟨b{i}*·x{p}, x{q}⟩"));
                    }
                }
            }
        }
        Ok(())
    }

    /// `_B⟨b·e_p, e_q⟩ = b _B⟨e_p, e_q⟩`.
    fn check_y3(&self, hb: &InnerTensor) -> std::result::Result<(), String> {
        let m = self.dim;
        let n = self.b.dim();
        for i in 0..n {
            for p in 0..m {
                let bp = self.left[i].column(p);
                for q in 0..m {
                    let lhs = contract(hb, n, |s, t| if t == q { bp[s].clone() } else { FracScalar::zero() });
                    let rhs = self.b.mul(&self.b.basis(i), &hb[p][q]);
                    if lhs != rhs {
                        return Err(format!("_B⟨b{i}·x{p}, x{q}⟩ ≠ b{i} _B⟨x{p}, x{q}⟩"));
                    }
                }
            }
        }
        Ok(())
    }

    /// `_B⟨e_p·a, e_q⟩ = _B⟨e_p, e_q·a*⟩`.
    fn check_y5(&self, hb: &InnerTensor) -> std::result::Result<(), String> {
        let m = self.dim;
        let n = self.b.dim();
        for i in 0..self.a.dim() {
            let r_star = self.right_op(self.a.star_basis(i));
            for p in 0..m {
                let xp = self.right[i].column(p);
                for q in 0..m {
                    let yq = r_star.column(q);
                    let lhs = contract(hb, n, |s, t| if t == q { xp[s].clone() } else { FracScalar::zero() });
                    let rhs = contract(hb, n, |s, t| if s == p { yq[t].conj() } else { FracScalar::zero() });
                    if lhs != rhs {
                        return Err(format!("_B⟨x{p}·a{i}, x{q}⟩ ≠ _B⟨x{p}, x{q}·a{i}*⟩"));
                    }
                }
            }
        }
        Ok(())
    }

    /// `_B⟨e_p, e_q⟩·e_r = e_p·⟨e_q, e_r⟩_A`.
    fn check_e3(&self, hb: &InnerTensor) -> std::result::Result<(), String> {
        let m = self.dim;
        for p in 0..m {
            for q in 0..m {
                let lhs_op = self.left_op(&hb[p][q]);
                for r in 0..m {
                    let lhs = lhs_op.column(r);
                    let rhs = self.right_op(&self.inner_a[q][r]).column(p);
                    if lhs != rhs {
                        return Err(format!("_B⟨x{p}, x{q}⟩·x{r} ≠ x{p}·⟨x{q}, x{r}⟩_A"));
                    }
                }
            }
        }
        Ok(())
    }

    /// Joint radical `{x : ⟨x, ·⟩_A ≡ 0}`.
    pub fn radical_a(&self) -> Vec<Vector> {
        let m = self.dim;
        let n = self.a.dim();
        let rows: Vec<Vec<FracScalar>> = (0..m)
            .flat_map(|q| (0..n).map(move |k| (q, k)))
            .map(|(q, k)| (0..m).map(|p| self.inner_a[p][q][k].conj()).collect())
            .collect();
        radical_of(rows, m)
    }

    /// Joint radical `{x : _B⟨x, ·⟩ ≡ 0}`.
    pub fn radical_b(&self) -> Result<Vec<Vector>> {
        let hb = self.require_inner_b()?;
        let m = self.dim;
        let n = self.b.dim();
        let rows: Vec<Vec<FracScalar>> = (0..m)
            .flat_map(|q| (0..n).map(move |k| (q, k)))
            .map(|(q, k)| (0..m).map(|p| hb[p][q][k].clone()).collect())
            .collect();
        Ok(radical_of(rows, m))
    }
}

fn radical_of(rows: Vec<Vec<FracScalar>>, m: usize) -> Vec<Vector> {
    if rows.is_empty() {
        return (0..m).map(|p| crate::linalg::basis_vector(m, p)).collect();
    }
    crate::linalg::kernel_basis(&Matrix::from_rows(rows).expect("rectangular"))
}

/// `Σ_q y_q h(p,q)` for a fixed `p`.
fn contract_row(h: &InnerTensor, p: usize, y: &[FracScalar], n: usize) -> Vector {
    let mut out = vec![FracScalar::zero(); n];
    for (q, c) in y.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        for (o, x) in out.iter_mut().zip(&h[p][q]) {
            *o = &*o + &(c * x);
        }
    }
    out
}

fn hermitian_symmetric(alg: &StarAlgebra, h: &InnerTensor, name: &str) -> std::result::Result<(), String> {
    for p in 0..h.len() {
        for q in p..h.len() {
            if h[p][q] != alg.star(&h[q][p]) {
                return Err(format!("{name}({p},{q}) ≠ {name}({q},{p})*"));
            }
        }
    }
    Ok(())
}

fn full(h: &InnerTensor, n: usize, name: &str) -> std::result::Result<(), String> {
    let values: Vec<Vector> = h.iter().flatten().cloned().collect();
    let r = rank_of(&values, n);
    if r == n {
        Ok(())
    } else {
        Err(format!("span of {name} has rank {r} < {n}"))
    }
}

/// Positivity of the block Gram `[h(p,q)]` in the matrix algebra over the
/// algebra's positive cone. For `hA` the module elements are `Σ e_p·a_p`, for
/// `hB` they are `Σ b_p·e_p`; both lead to the same block matrix.
/// Returns the outcome and the regime used.
pub(crate) fn positivity(
    alg: &StarAlgebra,
    h: &InnerTensor,
    functionals: &[LinearFunctional],
    squares: Option<&[Vec<(FracScalar, Vector)>]>,
) -> (std::result::Result<(), String>, String) {
    let m = h.len();
    if let Some(model) = alg.model() {
        let n = model.size();
        let images: Vec<Vec<Matrix>> = h
            .iter()
            .map(|row| row.iter().map(|v| model.image(v)).collect())
            .collect();
        let big = Matrix::from_fn(m * n, m * n, |i, j| images[i / n][j / n][(i % n, j % n)].clone());
        let outcome = match psd_decide(&big) {
            Ok(c) if c.is_positive() => Ok(()),
            Ok(c) => Err(format!(
                "matrix-model Gram not positive; witness {:?}",
                c.witness.unwrap_or_default().iter().map(|z| z.to_string()).collect::<Vec<_>>()
            )),
            Err(e) => Err(e.to_string()),
        };
        return (outcome, "matrix model: exact positive-cone decision".into());
    }
    if let Some(sq) = squares {
        let outcome = (|| {
            if sq.len() != m {
                return Err("one sum-of-squares witness per basis vector required".to_string());
            }
            for (p, terms) in sq.iter().enumerate() {
                verify_sum_of_squares(alg, &h[p][p], terms).map_err(|e| format!("basis vector {p}: {e}"))?;
            }
            Ok(())
        })();
        return (outcome, "sum-of-squares witnesses on basis vectors".into());
    }
    if !functionals.is_empty() {
        let outcome = (|| {
            for (k, omega) in functionals.iter().enumerate() {
                match functional_positivity(alg, omega) {
                    Ok(c) if c.is_positive() => {}
                    _ => return Err(format!("sample functional {k} is not positive")),
                }
                let g = Matrix::from_fn(m, m, |p, q| omega.eval(&h[p][q]));
                match psd_decide(&g) {
                    Ok(c) if c.is_positive() => {}
                    Ok(_) => return Err(format!("Gram paired with functional {k} is not positive")),
                    Err(e) => return Err(format!("functional {k}: {e}")),
                }
            }
            Ok(())
        })();
        return (outcome, format!("paired with {} positive functionals", functionals.len()));
    }
    (
        Err("undecided: no matrix model, witnesses or functionals".into()),
        "none".into(),
    )
}
