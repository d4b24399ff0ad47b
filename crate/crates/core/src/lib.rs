//! Exact rational idempotents of group algebras and isotypical
//! decompositions of Jacobians of curves with a finite group action.

pub mod algebra;
pub mod chars;
pub mod config;
pub mod decomp;
pub mod error;
pub mod group;
pub mod io;
pub mod linalg;
pub mod numfield;

#[cfg(test)]
pub(crate) mod testing;

pub use chars::{CharacterTable, RationalIrrep, RationalIrreps, SchurStatus};
pub use config::Bounds;
pub use error::{Error, Result};
pub use group::{ConjugacyClass, FiniteGroup, Presentation, Subgroup, SubgroupLattice};
