//! Inner-product modules, *-representations, GNS, commutants and
//! intertwiners.

mod gns;
mod intertwiner;
mod module;
mod rep;

pub use gns::{gns, GnsResult};
pub use intertwiner::{
    classify, commutant_basis, gaussian_root_of_norm, intertwiner_basis, intertwiners,
    search_unitary, Intertwiner, IntertwinerSpace, UnitarySearch,
};
pub use module::InnerProductModule;
pub use rep::{defining_representation, direct_sum, Representation};
