//! Coalgebra automorphisms of `H`: generator words, tabulation on windows,
//! the coalgebra-map check, triangular inversion and decomposition.

mod coalgebra;
mod decompose;
mod table;
mod word;

pub use coalgebra::{
    extract_level, is_coalgebra_map, leading_coefficient, level_defect, CoalgebraReport,
    Counterexample,
};
pub use decompose::{decompose, DecompositionResult};
pub use table::{MonomialMap, TabulatedMorphism};
pub use word::{Atom, Morphism};
