//! Exact finite-field computations for rational curves in P^4 and on quintic
//! threefolds: twisted ideal-sheaf cohomology, splitting types of restricted
//! bundles, balanced normal sheaves, and the dimension counts of the strata
//! of the incidence scheme of curves on quintics.
//!
//! The linear algebra and binary-form arithmetic in [`algebra`] are generic
//! over a [`Field`] context. Geometry is computed over a [`PrimeField`]
//! (default characteristic 32003); [`RationalField`] provides an exact
//! cross-check. The aliases below name the concrete instantiations used
//! throughout.

pub mod algebra;
pub mod bundles;
pub mod cohom;
pub mod curve;
pub mod error;
pub mod strata;

pub use algebra::{BinaryForm, Field, Matrix, NumField, PrimeField, RationalField, Var, DEFAULT_PRIME};
pub use error::{Error, Result};

/// Residue modulo the working prime.
pub type Residue = u32;
/// Matrix over the working prime field.
pub type ModMatrix = Matrix<Residue>;
/// Binary form over the working prime field.
pub type ModForm = BinaryForm<Residue>;
/// Matrix of exact rationals.
pub type RationalMatrix = Matrix<num_rational::BigRational>;
/// Binary form with exact rational coefficients.
pub type RationalForm = BinaryForm<num_rational::BigRational>;
