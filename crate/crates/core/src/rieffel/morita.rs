//! GNS as an induced representation, the `X̄ ⊗ X` round trip, Morita
//! contexts and the center isomorphism.

use std::sync::Arc;

use super::induce::{induce, induce_intertwiner, InductionResult};
use crate::algebra::{find_unit, scalars, LinearFunctional, StarAlgebra, StarHomomorphism};
use crate::bimodule::{conjugate, Bimodule};
use crate::error::{Error, Result};
use crate::linalg::{
    basis_vector, coordinates_in, is_zero_vector, rank_of, solve_matrix, Matrix, Vector,
};
use crate::prehilbert::{classify, defining_representation, gns, GnsResult, Intertwiner, Representation};
use crate::report::Report;
use crate::rings::FracScalar;

#[derive(Clone, Debug)]
pub struct GnsComparison {
    pub gns: GnsResult,
    pub bimodule: Bimodule,
    pub induction: InductionResult,
    /// `𝔎 → H_ω`.
    pub unitary: Intertwiner,
    /// The null space of the induced product equals the Gel'fand ideal.
    pub kernels_agree: bool,
    /// `U[1⊗1] = ψ_1`, for unital algebras.
    pub vacuum_preserved: Option<bool>,
}

/// `A` as an `(A-C)`-bimodule with `⟨a, b⟩ = ω(a*b)`.
pub fn functional_bimodule(alg: Arc<StarAlgebra>, omega: &LinearFunctional) -> Result<Bimodule> {
    let c = Arc::new(scalars());
    let n = alg.dim();
    let left = (0..n).map(|i| alg.left_mult(&alg.basis(i))).collect();
    let inner = (0..n)
        .map(|p| {
            (0..n)
                .map(|q| vec![omega.eval(&alg.mul(alg.star_basis(p), &alg.basis(q)))])
                .collect()
        })
        .collect();
    Bimodule::new(alg, c, left, vec![Matrix::identity(n)], inner)
}

pub fn gns_via_induction_compare(alg: Arc<StarAlgebra>, omega: &LinearFunctional) -> Result<GnsComparison> {
    let g = gns(alg.clone(), omega)?;
    let x = functional_bimodule(alg.clone(), omega)?;
    let rep = defining_representation(x.a.clone())?;
    let ind = induce(&x, &rep)?;
    // X ⊗ C = A, so the ambient space of the induction is the algebra itself
    let u = &g.quotient.proj * &ind.quotient.lift;
    let unitary = classify(&u, &ind.representation, &g.representation)?;
    let n = alg.dim();
    let kernels_agree = rank_of(&ind.quotient.kernel, n) == g.gelfand_ideal.len()
        && rank_of(
            &ind.quotient.kernel.iter().chain(&g.gelfand_ideal).cloned().collect::<Vec<_>>(),
            n,
        ) == g.gelfand_ideal.len();
    let vacuum_preserved = find_unit(&alg).map(|one| {
        let class = ind.class_of(&one, &[FracScalar::one()]);
        Some(u.apply(&class)) == g.vacuum
    });
    Ok(GnsComparison {
        gns: g,
        bimodule: x,
        induction: ind,
        unitary,
        kernels_agree,
        vacuum_preserved,
    })
}

#[derive(Clone, Debug)]
pub struct Roundtrip {
    /// `R_X(π)`, a B-representation.
    pub first: InductionResult,
    /// `R_X̄(R_X(π))`, an A-representation.
    pub second: InductionResult,
    /// `π` with its radical divided out.
    pub target: Representation,
    /// `[x̄⊗[y⊗ψ]] ↦ π(⟨x,y⟩_A)ψ`.
    pub unitary: Intertwiner,
}

/// The certified natural unitary `R_X̄ R_X (π) ≅ π`.
pub fn roundtrip_unitary(x: &Bimodule, rep: &Representation) -> Result<Roundtrip> {
    if !rep.is_strongly_nondegenerate() {
        return Err(Error::NotStronglyNonDegenerate);
    }
    let xbar = conjugate(x)?;
    let first = induce(x, rep)?;
    let second = induce(&xbar, &first.representation)?;
    let (target, q) = rep.quotient_by_null()?;
    let (m, d, k) = (x.dim, rep.dim(), first.dim());
    let lift1 = &first.quotient.lift;
    // column p·k + j: ē_p ⊗ [lift₁ column j] ↦ Σ lift₁[(q,s),j] π(hA(p,q)) e_s
    let ambient = Matrix::from_columns(
        d,
        &(0..m * k)
            .map(|col| {
                let (p, j) = (col / k, col % k);
                let mut out = vec![FracScalar::zero(); d];
                for qq in 0..m {
                    let op = rep.op(&x.inner_a[p][qq]);
                    for s in 0..d {
                        let c = &lift1[(qq * d + s, j)];
                        if c.is_zero() {
                            continue;
                        }
                        for (o, v) in out.iter_mut().zip(op.column(s)) {
                            *o = &*o + &(c * &v);
                        }
                    }
                }
                out
            })
            .collect::<Vec<_>>(),
    );
    let ambient = &q.proj * &ambient;
    for kv in &second.quotient.kernel {
        if !is_zero_vector(&ambient.apply(kv)) {
            return Err(Error::NotIntertwiner("round-trip map is not well defined".into()));
        }
    }
    let u = &ambient * &second.quotient.lift;
    let unitary = classify(&u, &second.representation, &target)?;
    Ok(Roundtrip {
        first,
        second,
        target,
        unitary,
    })
}

/// `U₂ ∘ R_X̄R_X(T) = T ∘ U₁` for an intertwiner `T: π₁ → π₂` between
/// representations with non-degenerate products.
pub fn roundtrip_naturality(x: &Bimodule, r1: &Representation, r2: &Representation, t: &Matrix) -> Result<bool> {
    if !r1.module.is_nondegenerate() || !r2.module.is_nondegenerate() {
        return Err(Error::DegenerateModule);
    }
    let xbar = conjugate(x)?;
    let rt1 = roundtrip_unitary(x, r1)?;
    let rt2 = roundtrip_unitary(x, r2)?;
    let once = induce_intertwiner(x, &rt1.first, &rt2.first, t)?;
    let twice = induce_intertwiner(&xbar, &rt1.second, &rt2.second, &once.matrix)?;
    Ok(&rt2.unitary.matrix * &twice.matrix == t * &rt1.unitary.matrix)
}

fn first_failure<T>(items: impl IntoIterator<Item = (T, bool)>, describe: impl Fn(T) -> String) -> std::result::Result<(), String> {
    for (item, ok) in items {
        if !ok {
            return Err(describe(item));
        }
    }
    Ok(())
}

/// Equivalence data `f(x̄⊗y) = ⟨x,y⟩_A`, `g(x⊗ȳ) = _B⟨x,y⟩`: surjectivity,
/// balancedness and the two associativity conditions on basis triples.
pub fn morita_context_check(x: &Bimodule) -> Result<Report> {
    if find_unit(&x.a).is_none() || find_unit(&x.b).is_none() {
        return Err(Error::NotUnital);
    }
    let hb = x.inner_b.as_ref().ok_or(Error::MissingInnerB)?;
    let xbar = conjugate(x)?;
    let m = x.dim;
    let mut r = Report::new();
    let all_a: Vec<Vector> = x.inner_a.iter().flatten().cloned().collect();
    let all_b: Vec<Vector> = hb.iter().flatten().cloned().collect();
    let ra = rank_of(&all_a, x.a.dim());
    let rb = rank_of(&all_b, x.b.dim());
    r.push(
        "f_surjective",
        if ra == x.a.dim() { Ok(()) } else { Err(format!("rank {ra} < {}", x.a.dim())) },
    );
    r.push(
        "g_surjective",
        if rb == x.b.dim() { Ok(()) } else { Err(format!("rank {rb} < {}", x.b.dim())) },
    );
    let pairs = || (0..m).flat_map(|p| (0..m).map(move |q| (p, q)));
    let e = |p| basis_vector(m, p);
    // f(x̄·b ⊗ y) = f(x̄ ⊗ b·y), with x̄·b = (b*·x)‾
    let f_bal = (0..x.b.dim()).flat_map(|i| pairs().map(move |pq| (i, pq))).map(|(i, (p, q))| {
        let bx = x.left_op(x.b.star_basis(i)).apply(&e(p));
        ((i, p, q), x.inner_a(&bx, &e(q)) == x.inner_a(&e(p), &x.left[i].column(q)))
    });
    r.push("f_balanced", first_failure(f_bal, |(i, p, q)| format!("b = e{i}, x = e{p}, y = e{q}")));
    // g(x·a ⊗ ȳ) = g(x ⊗ a·ȳ), with a·ȳ = (y·a*)‾
    let g_bal = (0..x.a.dim()).flat_map(|i| pairs().map(move |pq| (i, pq))).map(|(i, (p, q))| {
        let ya = x.right_op(x.a.star_basis(i)).apply(&e(q));
        ((i, p, q), x.inner_b(&x.right[i].column(p), &e(q)) == x.inner_b(&e(p), &ya))
    });
    r.push("g_balanced", first_failure(g_bal, |(i, p, q)| format!("a = e{i}, x = e{p}, y = e{q}")));
    let triples = || (0..m).flat_map(|p| (0..m).flat_map(move |q| (0..m).map(move |s| (p, q, s))));
    // f(x̄⊗y)·z̄ = x̄·g(y⊗z̄) in X̄
    let cond_i = triples().map(|(p, q, s)| {
        let lhs = xbar.left_op(&x.inner_a[p][q]).apply(&e(s));
        let rhs = xbar.right_op(&hb[q][s]).apply(&e(p));
        ((p, q, s), lhs == rhs)
    });
    r.push("context_i", first_failure(cond_i, |(p, q, s)| format!("basis triple ({p},{q},{s})")));
    // g(x⊗ȳ)·z = x·f(ȳ⊗z) in X
    let cond_ii = triples().map(|(p, q, s)| {
        let lhs = x.left_op(&hb[p][q]).apply(&e(s));
        let rhs = x.right_op(&x.inner_a[q][s]).apply(&e(p));
        ((p, q, s), lhs == rhs)
    });
    r.push("context_ii", first_failure(cond_ii, |(p, q, s)| format!("basis triple ({p},{q},{s})")));
    Ok(r)
}

#[derive(Clone, Debug)]
pub struct CenterIsomorphism {
    pub center_b: Arc<StarAlgebra>,
    pub center_a: Arc<StarAlgebra>,
    /// Bases of the centers inside `B` and `A`.
    pub basis_b: Vec<Vector>,
    pub basis_a: Vec<Vector>,
    /// `φ: Z(B) → Z(A)` with `b·x = x·φ(b)` for all `x`.
    pub map: StarHomomorphism,
}

impl CenterIsomorphism {
    /// `φ(b)` as an element of `A`.
    pub fn apply(&self, b_coords: &[FracScalar]) -> Vector {
        let z = self.map.apply(b_coords);
        crate::linalg::combine(&z, &self.basis_a, self.center_a_ambient())
    }

    fn center_a_ambient(&self) -> usize {
        self.basis_a.first().map_or(0, Vec::len)
    }
}

pub fn center_isomorphism(x: &Bimodule) -> Result<CenterIsomorphism> {
    let report = morita_context_check(x)?;
    if let Some(c) = report.first_failure() {
        return Err(Error::ContextConditionFailed(format!(
            "{}: {}",
            c.name,
            c.detail.clone().unwrap_or_default()
        )));
    }
    let basis_b = x.b.center_basis();
    let basis_a = x.a.center_basis();
    let center_b = Arc::new(x.b.subalgebra(&basis_b)?);
    let center_a = Arc::new(x.a.subalgebra(&basis_a)?);
    let m = x.dim;
    let len = m * m;
    let right_cols: Vec<Vector> = x.right.iter().map(|r| r.entries().to_vec()).collect();
    let system = Matrix::from_columns(len, &right_cols);
    let mut images = Vec::new();
    for (k, z) in basis_b.iter().enumerate() {
        let l = x.left_op(z);
        let target = Matrix::from_columns(len, &[l.entries().to_vec()]);
        let a = solve_matrix(&system, &target)?
            .ok_or_else(|| Error::ContextConditionFailed(format!("no a with x·a = z{k}·x")))?
            .column(0);
        let coords = coordinates_in(&basis_a, &a)
            .ok_or_else(|| Error::ContextConditionFailed(format!("image of z{k} is not central")))?;
        images.push(coords);
    }
    let map = StarHomomorphism::new(center_b.clone(), center_a.clone(), images)?;
    if !map.is_bijective() {
        return Err(Error::ContextConditionFailed("center map is not bijective".into()));
    }
    Ok(CenterIsomorphism {
        center_b,
        center_a,
        basis_b,
        basis_a,
        map,
    })
}
