//! Exact ground-field arithmetic and q-combinatorics.
//!
//! A [`Scalar`] is either a rational constant or a reduced rational function of
//! the indeterminate `q`. The [`Field`] decides what `q` is: an indeterminate
//! (symbolic mode) or a fixed rational (numeric mode). All q-dependent
//! quantities are produced through the field.

mod field;
mod poly;
mod scalar;

pub use field::{Field, FieldMode};
pub use poly::QPoly;
pub use scalar::{RatFunc, Scalar};

