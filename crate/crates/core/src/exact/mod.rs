//! Exact scalar arithmetic and linear algebra over cyclotomic fields.

pub mod cyclo;
pub mod mat;
pub mod realsign;
pub mod subspace;

pub use cyclo::Cyclo;
pub use mat::Mat;
pub use subspace::Subspace;
