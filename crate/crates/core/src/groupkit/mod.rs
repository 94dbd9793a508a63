//! Integer-indexed sequences, the semidirect product `(k^x)^Z x| Z`, and
//! finite truncations of `G_inf` with their group law and the action on them.

mod semidirect;
mod seq;
mod tower;

pub use semidirect::{act, semidirect_mul, SemidirectElt};
pub use seq::{alpha_angle, beta_run, AlphaSeq, BetaSeq, Shift};
pub use tower::{g_mul, g_mul_closed, BetaTower};
