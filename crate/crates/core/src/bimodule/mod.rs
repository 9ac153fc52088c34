//! Rigged bimodules and equivalence bimodules: axioms, conjugates, quotients,
//! tensor products, finite-rank operators and standard constructions.

mod constructors;
mod core;
mod cyclic;
mod finite_rank;
mod ops;

pub use self::core::{Bimodule, InnerTensor, Level, ValidationOptions};
pub use constructors::{algebra_inverse, corner_bimodule, free_module_bimodule, homomorphism_bimodule, Corner};
pub use cyclic::{CyclicChecks, CyclicStructure, CyclicSubmodule};
pub use finite_rank::{finite_rank_algebra, theta, FiniteRankAlgebra};
pub use ops::{
    conjugate, quotient_by_n, tensor_algebra_bimodules, tensor_bimodules, BalancedTensor,
    RadicalQuotient,
};

pub(crate) use ops::descend_bimodule;
