//! Truncated simplicial sets, the subdivision-style endofunctors and their
//! connecting maps, horn-filling schedules and the comparison maps.

pub mod comparison;
pub mod complex;
pub mod cylinder;
pub mod endofunctors;
pub mod kan;
pub mod kinds;

pub use complex::{nerve_truncated, standard_simplex, Key, SimplicialMap, Subcomplex, TruncatedSSet};
pub use kinds::{EndofunctorKind, Model, Shape};
pub mod horns;
pub mod maps;
