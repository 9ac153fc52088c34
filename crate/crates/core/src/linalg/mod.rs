//! Exact linear algebra over the fraction field `Ĉ`.

mod matrix;
pub mod psd;
pub mod reduce;

pub use matrix::{
    basis_vector, combine, dot, form, is_zero_vector, vec_add, vec_kron, vec_scale, vec_sub,
    zero_vector, Matrix, Vector,
};
pub use psd::{congruence_diagonalize, forced_zero_entries, psd_decide, PsdCertificate, Verdict};
pub use reduce::{
    coordinates_in, independent_subset, inverse, kernel_basis, rank, rank_of, solve, solve_matrix,
    Quotient,
};
