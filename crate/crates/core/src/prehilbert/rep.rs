use std::sync::Arc;

use super::module::InnerProductModule;
use crate::algebra::StarAlgebra;
use crate::error::{Error, Result};
use crate::linalg::{rank_of, Matrix, Quotient, Vector};
use crate::report::Report;
use crate::rings::FracScalar;

/// *-representation of a *-algebra by matrices on an inner-product module.
#[derive(Clone, Debug)]
pub struct Representation {
    pub algebra: Arc<StarAlgebra>,
    pub module: InnerProductModule,
    /// `π(e_i)` for each basis element of the algebra.
    pub ops: Vec<Matrix>,
    /// Known cyclic vectors, if any.
    pub cyclic: Vec<Vector>,
}

impl Representation {
    pub fn new(algebra: Arc<StarAlgebra>, module: InnerProductModule, ops: Vec<Matrix>) -> Result<Self> {
        let m = module.dim();
        if ops.len() != algebra.dim() || ops.iter().any(|o| o.rows() != m || o.cols() != m) {
            return Err(Error::ShapeMismatch(format!(
                "{} operators of size {m} expected",
                algebra.dim()
            )));
        }
        Ok(Representation {
            algebra,
            module,
            ops,
            cyclic: Vec::new(),
        })
    }

    pub fn with_cyclic(mut self, cyclic: Vec<Vector>) -> Self {
        self.cyclic = cyclic;
        self
    }

    pub fn dim(&self) -> usize {
        self.module.dim()
    }

    pub fn gram(&self) -> &Matrix {
        self.module.gram()
    }

    /// `π(a)` for an algebra element.
    pub fn op(&self, a: &[FracScalar]) -> Matrix {
        let m = self.dim();
        let mut out = Matrix::zeros(m, m);
        for (c, o) in a.iter().zip(&self.ops) {
            if !c.is_zero() {
                out = &out + &o.scale(c);
            }
        }
        out
    }

    /// The zero-dimensional representation.
    pub fn zero(algebra: Arc<StarAlgebra>) -> Self {
        let ops = vec![Matrix::zeros(0, 0); algebra.dim()];
        Representation {
            algebra,
            module: InnerProductModule::standard(0),
            ops,
            cyclic: Vec::new(),
        }
    }

    /// `span{π(e_i) e_p}` is everything, modulo the radical.
    pub fn is_strongly_nondegenerate(&self) -> bool {
        let m = self.dim();
        let (h0, q) = self.module.quotient_by_null();
        let images: Vec<Vector> = self
            .ops
            .iter()
            .flat_map(|o| o.column_vectors())
            .map(|v| q.project(&v))
            .collect();
        m == 0 || rank_of(&images, h0.dim()) == h0.dim()
    }

    /// Multiplicativity, star compatibility, adjoint existence and strong
    /// non-degeneracy.
    pub fn validate(&self) -> Report {
        let mut report = Report::new();
        let alg = &self.algebra;
        let n = alg.dim();
        let g = self.gram();
        let mut outcome = Ok(());
        'outer: for i in 0..n {
            for j in 0..n {
                if &self.ops[i] * &self.ops[j] != self.op(&alg.mul_basis(i, j)) {
                    outcome = Err(format!("π(e{i})π(e{j}) ≠ π(e{i}e{j})"));
                    break 'outer;
                }
            }
        }
        report.push("multiplicativity", outcome);
        let mut outcome = Ok(());
        for i in 0..n {
            // ⟨π(e_i*)φ, ψ⟩ = ⟨φ, π(e_i)ψ⟩  ⟺  π(e_i*)^† G = G π(e_i)
            let lhs = &self.op(alg.star_basis(i)).adjoint() * g;
            if lhs != g * &self.ops[i] {
                outcome = Err(format!(
                    "⟨π({}*)φ, ψ⟩ ≠ ⟨φ, π({})ψ⟩",
                    alg.labels()[i],
                    alg.labels()[i]
                ));
                break;
            }
        }
        report.push("star_compatibility", outcome);
        if self.module.is_nondegenerate() {
            report.pass("adjoints_exist");
        } else {
            // adjoints are defined on the quotient by the radical, which every
            // operator preserves once star compatibility holds
            let (_, q) = self.module.quotient_by_null();
            let preserved = self.ops.iter().all(|o| q.descend(o).is_ok());
            report.push(
                "adjoints_exist",
                if preserved {
                    Ok(())
                } else {
                    Err("an operator does not preserve the radical".into())
                },
            );
        }
        report.push(
            "strongly_nondegenerate",
            if self.is_strongly_nondegenerate() {
                Ok(())
            } else {
                Err("span{π(e_i)φ} is a proper submodule".into())
            },
        );
        report
    }

    /// Passes everything except possibly strong non-degeneracy.
    pub fn is_star_representation(&self) -> bool {
        let r = self.validate();
        r.checks
            .iter()
            .filter(|c| c.name != "strongly_nondegenerate")
            .all(|c| c.passed)
    }

    /// Push the representation down to the quotient by the radical.
    pub fn quotient_by_null(&self) -> Result<(Representation, Quotient)> {
        let (h0, q) = self.module.quotient_by_null();
        let ops = self
            .ops
            .iter()
            .map(|o| q.descend(o))
            .collect::<Result<Vec<_>>>()
            .map_err(|_| Error::NotAdjointable("operator does not preserve the radical".into()))?;
        let cyclic = self.cyclic.iter().map(|v| q.project(v)).collect();
        Ok((
            Representation {
                algebra: self.algebra.clone(),
                module: h0,
                ops,
                cyclic,
            },
            q,
        ))
    }

    /// Whether `v` generates the (quotiented) module under the action.
    pub fn is_cyclic_vector(&self, v: &[FracScalar]) -> bool {
        let (h0, q) = self.module.quotient_by_null();
        let orbit: Vec<Vector> = self.ops.iter().map(|o| q.project(&o.apply(v))).collect();
        rank_of(&orbit, h0.dim()) == h0.dim()
    }
}

/// Block-diagonal sum of representations of one algebra.
pub fn direct_sum(reps: &[&Representation]) -> Result<Representation> {
    let Some(first) = reps.first() else {
        return Err(Error::BadParams("direct sum of no representations".into()));
    };
    let alg = first.algebra.clone();
    if reps.iter().any(|r| !Arc::ptr_eq(&r.algebra, &alg) && *r.algebra != *alg) {
        return Err(Error::AlgebraMismatch);
    }
    let modules: Vec<&InnerProductModule> = reps.iter().map(|r| &r.module).collect();
    let module = InnerProductModule::direct_sum(&modules);
    let ops = (0..alg.dim())
        .map(|i| Matrix::direct_sum(&reps.iter().map(|r| &r.ops[i]).collect::<Vec<_>>()))
        .collect();
    let total = module.dim();
    let mut cyclic = Vec::new();
    let mut offset = 0;
    for r in reps {
        for v in &r.cyclic {
            let mut w = crate::linalg::zero_vector(total);
            w[offset..offset + r.dim()].clone_from_slice(v);
            cyclic.push(w);
        }
        offset += r.dim();
    }
    Ok(Representation {
        algebra: alg,
        module,
        ops,
        cyclic,
    })
}

/// Defining representation of `M_n` on `Cⁿ` with the standard product.
pub fn defining_representation(alg: Arc<StarAlgebra>) -> Result<Representation> {
    let model = alg
        .model()
        .ok_or_else(|| Error::BadParams("algebra has no matrix model".into()))?
        .clone();
    let n = model.size();
    Representation::new(alg, InnerProductModule::standard(n), model.images)
}
