//! Finite permutation groups at desk scale: subgroup lattices and their
//! Moebius function, chief series with complement counts, irredundant
//! generating sets, and the replacement property.

pub mod analysis;
pub mod bitset;
pub mod error;
pub mod families;
pub mod genset;
pub mod group;
pub mod lattice;
pub mod perm;
mod poly;
pub mod structure;

pub use analysis::{analyze, AnalysisOptions, AnalysisReport};
pub use bitset::{BitSet, ElementSubset};
pub use error::{Error, Result};
pub use families::{catalog, expand_specs, GroupSpec};
pub use genset::{Budget, MSource, MValue, SearchStatus};
pub use group::{close_generators, CosetAction, ElementIndex, Group, Limits};
pub use lattice::{
    compute_mobius, enumerate_subgroups, KGroupVerdict, SubgroupId, SubgroupLattice,
};
pub use perm::{compose, inverse, parse_permutation, Permutation};
pub use structure::{chief_series, classify_strong_form, ChiefSeries, StrongFormClassification};
