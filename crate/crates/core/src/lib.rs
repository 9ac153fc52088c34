//! Exact computer algebra for *-algebras over ordered rings.
//!
//! Everything is computed over `ℚ(i)` or over `ℚ[λ](i)` with the λ-adic
//! ordering, without floating point. Verdicts come with certificates that can
//! be replayed independently.

pub mod algebra;
pub mod bimodule;
pub mod classical;
pub mod cli;
pub mod error;
pub mod linalg;
pub mod prehilbert;
pub mod report;
pub mod rieffel;
pub mod rings;

pub use error::{Error, Result};
