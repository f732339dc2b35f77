//! Exact computational algebra for finite quantum groups.
//!
//! The crate realizes finite-dimensional Hopf *-algebras with Haar state on
//! their GNS space, builds the multiplicative unitary, and computes centers,
//! inner-automorphism algebras, coideal lattices, chain groups and cocycle
//! twists — everything over exact cyclotomic scalars, so each structural
//! claim is decided by linear algebra with no tolerances.

pub mod error;
pub mod exact;

pub use error::{QgError, QgResult};
pub use exact::{Cyclo, Mat, Subspace};
pub mod opalg;
