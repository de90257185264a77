//! Exact arithmetic substrate: fields, dense matrices, binary forms.

pub mod field;
pub mod form;
pub mod integer;
pub mod matrix;

pub use field::{is_prime, Field, NumField, PrimeField, RationalField, DEFAULT_PRIME};
pub use form::{BinaryForm, Var};
pub use matrix::{apply, kernel_basis, rank, rref, Echelon, Matrix};
