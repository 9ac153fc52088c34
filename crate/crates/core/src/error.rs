use thiserror::Error;

use crate::linalg::Vector;

/// Every failure the library reports. Variants that refute a property carry
/// enough data to replay the refutation.
#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("fraction is not an element of the base ring (denominator is not a unit)")]
    NotInRing,
    #[error("denominator vanishes at lambda = 0; no classical limit")]
    DenominatorVanishesAtZero,
    #[error("matrix is not Hermitian (first asymmetric entry at {0:?})")]
    NotHermitian((usize, usize)),
    #[error("matrix is not positive semi-definite")]
    NotPsd { witness: Vector },
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("bad parameters: {0}")]
    BadParams(String),
    #[error("invalid witness: {0}")]
    InvalidWitness(String),
    #[error("functional is not positive")]
    NotPositiveFunctional { witness: Vector },
    #[error("representations act on different algebras")]
    AlgebraMismatch,
    #[error("module Hermitian product is degenerate")]
    DegenerateModule,
    #[error("bimodule has no B-valued inner product")]
    MissingInnerB,
    #[error("algebra has neither a unit nor a validated approximate identity")]
    NoIdentityStructure,
    #[error("middle algebras of the tensor factors differ")]
    MiddleAlgebraMismatch,
    #[error("missing cyclic witness: {0}")]
    MissingCyclicWitness(String),
    #[error("rank-one operators do not close under composition: {0}")]
    DegenerateRiggedModule(String),
    #[error("map is not a *-homomorphism: {0}")]
    NotStarHomomorphism(String),
    #[error("element is not a projection: {0}")]
    NotProjection(String),
    #[error("projection is not full: span of AQB has rank {rank} < {dim}")]
    NotFull { rank: usize, dim: usize },
    #[error("induced inner product is not positive semi-definite")]
    PositivityViolated { witness: Vector },
    #[error("invalid bimodule: {0}")]
    InvalidBimodule(String),
    #[error("map is not an intertwiner: {0}")]
    NotIntertwiner(String),
    #[error("operator does not commute with the representation")]
    NotInCommutant,
    #[error("representation is not strongly non-degenerate")]
    NotStronglyNonDegenerate,
    #[error("algebra is not unital")]
    NotUnital,
    #[error("Morita context condition failed: {0}")]
    ContextConditionFailed(String),
    #[error("operator is not adjointable: {0}")]
    NotAdjointable(String),
    #[error("syntax error at {path}: {message}")]
    SyntaxError { path: String, message: String },
    #[error("unresolved reference {name} at {path}")]
    UnresolvedReference { path: String, name: String },
    #[error("malformed scalar at {path}: {message}")]
    MalformedScalar { path: String, message: String },
    #[error("unknown command {0}")]
    UnknownCommand(String),
}

pub type Result<T> = std::result::Result<T, Error>;
