//! Finite complex reflection groups from matrix generators: enumeration,
//! the hyperplane arrangement with its cyclic stabilizers W_α, and coset
//! bookkeeping.

mod arrangement;
mod catalog;
mod datum;
mod group;
mod subgroup;

pub use arrangement::{hyperplanes, reflection_eigenvalue, Arrangement, Hyperplane};
pub use catalog::{catalog, catalog_order};
pub use datum::GroupDatum;
pub use group::{enumerate, FiniteGroup, ReflectionGroup, DEFAULT_GROUP_CAP};
pub use subgroup::{conjugacy_classes, is_subgroup, left_cosets, subgroup_generated, CosetTable};
