//! Exact computations with rational invariants of the classical groups
//! GL, SL and the unipotent group U over a finite field, acting on several
//! copies of a vector space and its dual.

pub mod certificate;
pub mod error;
pub mod gf;
pub mod groups;
pub mod invariants;
pub mod relations;
pub mod suite;
pub mod linalg;
pub mod mpoly;

pub use error::{Error, Result};
