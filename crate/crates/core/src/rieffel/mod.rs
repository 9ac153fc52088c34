//! Algebraic Rieffel induction and its consequences: functoriality, GNS as
//! induction, the round trip through the conjugate bimodule, Morita contexts
//! and centers.

mod induce;
mod morita;

pub use induce::{
    commutant_map, direct_sum_unitary, induce, induce_intertwiner, verify_commutant_map, InductionResult,
};
pub use morita::{
    center_isomorphism, functional_bimodule, gns_via_induction_compare, morita_context_check,
    roundtrip_naturality, roundtrip_unitary, CenterIsomorphism, GnsComparison, Roundtrip,
};

pub(crate) use induce::tensor_gram;
