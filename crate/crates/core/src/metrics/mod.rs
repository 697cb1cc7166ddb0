//! Exploration-exploitation scoring and the hypervolume indicator.

mod exploration;
mod hypervolume;

pub use exploration::{
    exploration_fraction, exploration_profile, lower_median, nearest_neighbour_distances,
    nearest_neighbour_distances_of, spearman_correlation, ExplorationProfile,
};
pub use hypervolume::{
    auto_reference, hypervolume_exact, hypervolume_mc, hypervolume_trace, HypervolumeTrace,
    ReferencePolicy, MAX_EXACT_OBJECTIVES,
};
