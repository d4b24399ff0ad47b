//! Group algebras `F[G]` over exact fields and the idempotent pipeline.

mod element;
mod idempotents;
mod rep;
mod system;
mod transcript;

pub use element::AlgebraElement;
pub use idempotents::{central_idempotent_ev, central_idempotent_ew, projector_ph, subgroup_idempotent_fh};
pub use rep::{Embedding, MatrixRep};
pub use system::{
    ell_from_representation, orbit_module_check, IdempotentSystem, OrbitModuleCheck,
};
pub use transcript::{Check, Transcript};
