//! Exact arithmetic for the Hopf algebra `H = k_q[x, x^-1, y]` and the group of
//! its coalgebra automorphisms.
//!
//! The crate is split along the natural layers of the computation:
//!
//! - [`qscalar`]: the ground field (rational functions in `q`, or rationals
//!   with `q` fixed) together with q-integers, q-factorials and Gaussian
//!   binomials.
//! - [`halgebra`]: normal-form elements on the basis `x^n y^m`, product,
//!   coproduct, counit, antipode and the primitive-space solver.
//! - [`groupkit`]: integer-indexed sequences, the semidirect product
//!   `(k^x)^Z x| Z`, truncated towers of `G_inf` and their multiplication.
//! - [`morphisms`]: coalgebra automorphisms as words of generators,
//!   tabulation on finite windows, inversion and decomposition.
//! - [`cli`]: expression parsing/rendering, JSON I/O and verification suites
//!   backing the `hq` binary.

pub mod cli;
pub mod error;
pub mod groupkit;
pub mod halgebra;
pub mod morphisms;
pub mod qscalar;
pub mod sample;

pub use error::{Error, Result};
pub use groupkit::{AlphaSeq, BetaSeq, BetaTower, SemidirectElt, Shift};
pub use halgebra::{Element, Monomial, TensorElement, Window};
pub use morphisms::{Atom, DecompositionResult, Morphism, TabulatedMorphism};
pub use qscalar::{Field, Scalar};
