//! The single block of size bounds used by every suite.

use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Profile {
    Quick,
    Default,
    Full,
}

#[derive(Clone, Debug, Serialize)]
pub struct Bounds {
    pub profile: Profile,
    /// Chain-length bound for materialized MP/ALL ladder categories.
    pub max_len: usize,
    /// Largest truncated simplex category or materialized category we build.
    pub max_morphisms: usize,
    /// Node budget for functor and transformation searches.
    pub search_nodes: usize,
    /// Largest number of cells per level of any simplicial set.
    pub max_cells: usize,
    /// Largest `n` for PLAIN horn schedules.
    pub horn_n: usize,
    /// Largest `n` for I-flavor horn schedules.
    pub horn_i_n: usize,
    /// Truncation for the comparison-map checks.
    pub comparison_dim: usize,
    /// Truncation for the endofunctor checks on small nerves.
    pub endofunctor_dim: usize,
}

impl Bounds {
    pub fn for_profile(profile: Profile) -> Self {
        let mut b = Bounds {
            profile,
            max_len: 2,
            max_morphisms: 200_000,
            search_nodes: 50_000_000,
            max_cells: 2_000_000,
            horn_n: 3,
            horn_i_n: 2,
            comparison_dim: 2,
            endofunctor_dim: 2,
        };
        match profile {
            Profile::Quick => {
                b.horn_n = 2;
                b.horn_i_n = 1;
            }
            Profile::Default => {}
            Profile::Full => {
                b.max_len = 3;
            }
        }
        b
    }
}

impl Default for Bounds {
    fn default() -> Self {
        Self::for_profile(Profile::Default)
    }
}
