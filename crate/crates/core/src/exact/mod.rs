//! Exact arithmetic: the field ℚ(√2), polynomials in the spectral
//! parameters and sparse operators.

mod bipoly;
mod field;
mod linalg;
mod poly;
mod roots;
mod scalar;
mod sparse;

pub use bipoly::BiPoly;
pub use field::{Additive, Field};
pub use linalg::{nullspace, rref};
pub use poly::UniPoly;
pub use roots::{rational_roots, RootSplit};
pub use scalar::Scalar;
pub use sparse::SparseOp;
