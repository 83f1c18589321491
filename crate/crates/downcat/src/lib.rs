//! Finite direct replacements of finite Reedy categories.
//!
//! Given a finite Reedy category `C`, this crate builds the skew-ladder
//! categories of chains in `C₋`, the quotient `Down(C)` of the conservative
//! one by the pointwise order on hom-sets, the functor `last`, and runs
//! exhaustive checks of the combinatorics around them: factorizations,
//! hom-poset maxima, 1-localization certificates, and the simplicial
//! subdivision and horn-filling machinery used for the higher version.

pub mod cli;
pub mod config;
pub mod corpus;
pub mod down;
pub mod error;
pub mod fincat;
pub mod io;
pub mod localization;
pub mod ladder;
pub mod reedy;
pub mod report;
pub mod simplex;
pub mod suites;
pub mod sset;

pub use error::{Error, Result};
