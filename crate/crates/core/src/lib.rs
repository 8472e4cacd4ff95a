//! Finite group cohomology of finitely generated G-modules in exact integer
//! arithmetic, and the Picard-group computations built on it.

pub mod cli;
pub mod cohomology;
pub mod gmodules;
pub mod inseparable;
pub mod integer;
pub mod picard;
pub mod zlattice;
