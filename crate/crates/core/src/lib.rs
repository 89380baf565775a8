//! Exact construction and verification of R-matrices and L-operators for the
//! orthogonal and symplectic Yangians.
//!
//! Everything is computed in ℚ(√2) with tolerance zero. The layers are
//! [`exact`] (arithmetic), [`structure`] (metric, R-matrix, Yang-Baxter),
//! [`spaces`] (representation spaces), [`lops`] (L-operator builders),
//! [`verify`] (identity checks) and [`weights`] (highest weights, ratios and
//! the Drinfeld test).

pub mod error;
pub mod exact;
pub mod lops;
pub mod spaces;
pub mod structure;
pub mod verify;
pub mod weights;

pub use error::{Error, Result};
pub use exact::Scalar;

/// Polynomials in the spectral parameter over ℚ(√2).
pub type Poly = exact::UniPoly<Scalar>;
/// Bivariate scalar polynomials in `(u, v)`.
pub type BiPolyS = exact::BiPoly<Scalar>;
/// Sparse operator on a representation space.
pub type Op = exact::SparseOp<Scalar>;
