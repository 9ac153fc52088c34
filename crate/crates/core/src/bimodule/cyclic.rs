//! Orthogonal decompositions into pseudo-cyclic submodules.

use crate::linalg::{is_zero_vector, rank_of, Matrix, Vector};

/// One summand `X⁽ⁱ⁾` with its increasing filtration `X_α = Ω_α · A`.
#[derive(Clone, Debug, PartialEq)]
pub struct CyclicSubmodule {
    /// Spanning vectors of the summand.
    pub span: Vec<Vector>,
    /// Pseudo-cyclic vectors `Ω_α` in filtration order.
    pub cyclic: Vec<Vector>,
}

/// Witness that a module is an orthogonal direct sum of invariant
/// pseudo-cyclic summands for one of its actions.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct CyclicStructure {
    pub submodules: Vec<CyclicSubmodule>,
}

/// Outcome of checking the three decomposition properties.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CyclicChecks {
    pub orthogonal_sum: Result<(), String>,
    pub invariant: Result<(), String>,
    pub pseudo_cyclic: Result<(), String>,
}

fn contained(vectors: &[Vector], within: &[Vector], dim: usize) -> bool {
    let base = rank_of(within, dim);
    let mut all = within.to_vec();
    all.extend(vectors.iter().cloned());
    rank_of(&all, dim) == base
}

fn orbit(ops: &[Matrix], v: &[crate::rings::FracScalar]) -> Vec<Vector> {
    ops.iter().map(|o| o.apply(v)).collect()
}

impl CyclicStructure {
    /// Check direct sum + orthogonality, invariance under `ops`, and that
    /// each summand is the increasing union of the orbits `ops·Ω_α`.
    /// `inner(u, v)` is the algebra-valued product.
    pub fn check(
        &self,
        dim: usize,
        ops: &[Matrix],
        inner: impl Fn(&[crate::rings::FracScalar], &[crate::rings::FracScalar]) -> Vector,
    ) -> CyclicChecks {
        let subs = &self.submodules;
        let orthogonal_sum = (|| {
            if subs.iter().flat_map(|s| &s.span).any(|v| v.len() != dim) {
                return Err("spanning vector has the wrong length".to_string());
            }
            let ranks: Vec<usize> = subs.iter().map(|s| rank_of(&s.span, dim)).collect();
            let all: Vec<Vector> = subs.iter().flat_map(|s| s.span.iter().cloned()).collect();
            let total = rank_of(&all, dim);
            if total != dim {
                return Err(format!("summands span dimension {total} of {dim}"));
            }
            if ranks.iter().sum::<usize>() != dim {
                return Err("summands are not independent".to_string());
            }
            for (i, s) in subs.iter().enumerate() {
                for (j, t) in subs.iter().enumerate().skip(i + 1) {
                    for (a, u) in s.span.iter().enumerate() {
                        for (b, v) in t.span.iter().enumerate() {
                            if !is_zero_vector(&inner(u, v)) {
                                return Err(format!(
                                    "summands {i} and {j} not orthogonal at spanning vectors ({a},{b})"
                                ));
                            }
                        }
                    }
                }
            }
            Ok(())
        })();
        let invariant = (|| {
            for (i, s) in subs.iter().enumerate() {
                for (k, o) in ops.iter().enumerate() {
                    let images: Vec<Vector> = s.span.iter().map(|v| o.apply(v)).collect();
                    if !contained(&images, &s.span, dim) {
                        return Err(format!("summand {i} not preserved by basis element {k}"));
                    }
                }
            }
            Ok(())
        })();
        let pseudo_cyclic = (|| {
            for (i, s) in subs.iter().enumerate() {
                if s.cyclic.is_empty() {
                    return Err(format!("summand {i} has no cyclic vector"));
                }
                let mut previous: Vec<Vector> = Vec::new();
                for (alpha, omega) in s.cyclic.iter().enumerate() {
                    if omega.len() != dim {
                        return Err(format!("cyclic vector {alpha} of summand {i} has the wrong length"));
                    }
                    let x_alpha = orbit(ops, omega);
                    if !contained(&x_alpha, &s.span, dim) {
                        return Err(format!("orbit of Ω_{alpha} leaves summand {i}"));
                    }
                    if !contained(&previous, &x_alpha, dim) {
                        return Err(format!("filtration of summand {i} decreases at step {alpha}"));
                    }
                    previous = x_alpha;
                }
                if rank_of(&previous, dim) != rank_of(&s.span, dim) {
                    return Err(format!("filtration of summand {i} does not exhaust it"));
                }
            }
            Ok(())
        })();
        CyclicChecks {
            orthogonal_sum,
            invariant,
            pseudo_cyclic,
        }
    }

    /// Apply a linear map to every vector of the witness.
    pub fn map(&self, f: impl Fn(&[crate::rings::FracScalar]) -> Vector) -> CyclicStructure {
        CyclicStructure {
            submodules: self
                .submodules
                .iter()
                .map(|s| CyclicSubmodule {
                    span: s.span.iter().map(|v| f(v)).collect(),
                    cyclic: s.cyclic.iter().map(|v| f(v)).collect(),
                })
                .collect(),
        }
    }

    /// Greedy search: take orbits `ops·c` of the candidates that are
    /// orthogonal to and independent of the orbits already chosen, until
    /// the whole module is covered. Each orbit is its own summand with a
    /// one-step filtration.
    pub fn search(
        dim: usize,
        ops: &[Matrix],
        candidates: &[Vector],
        inner: impl Fn(&[crate::rings::FracScalar], &[crate::rings::FracScalar]) -> Vector,
    ) -> Option<CyclicStructure> {
        let mut chosen: Vec<CyclicSubmodule> = Vec::new();
        let mut covered: Vec<Vector> = Vec::new();
        if dim == 0 {
            return Some(CyclicStructure::default());
        }
        for c in candidates {
            let span = orbit(ops, c);
            let r = rank_of(&span, dim);
            if r == 0 {
                continue;
            }
            let mut joined = covered.clone();
            joined.extend(span.iter().cloned());
            if rank_of(&joined, dim) != rank_of(&covered, dim) + r {
                continue;
            }
            let orthogonal = chosen
                .iter()
                .flat_map(|s| &s.span)
                .all(|u| span.iter().all(|v| is_zero_vector(&inner(u, v))));
            if !orthogonal {
                continue;
            }
            covered = joined;
            chosen.push(CyclicSubmodule {
                span,
                cyclic: vec![c.clone()],
            });
            if rank_of(&covered, dim) == dim {
                return Some(CyclicStructure { submodules: chosen });
            }
        }
        None
    }
}
