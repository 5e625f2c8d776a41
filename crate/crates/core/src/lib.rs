//! Exact verification of planar and Alltop functions over finite fields,
//! complete sets of mutually unbiased bases built from them, and the
//! correlation bounds their signal sets meet.
//!
//! Everything is computed exactly: field arithmetic on tables, character
//! sums in Z[ω_p], and correlation statistics as rationals.

pub mod cli;
pub mod cyclotomic;
pub mod error;
pub mod families;
pub mod field;
pub mod fn_algebra;
pub mod mub;
pub mod search;

pub use error::{Error, Result};
pub use field::{Field, FieldElement, FieldSpec};
pub use fn_algebra::{FnTable, PolyFn};
