//! Spider types and the pipeline from coordinates to the flat family.

mod basis;
mod rees;
mod relations;
mod types;
mod weights;

pub use basis::{build_basis, build_basis_from, expand_in_basis, SpiderBasis};
pub use rees::{
    build_family, build_family_with, homogenize, FamilyOptions, ReesFamily, WeightStrategy,
};
pub use relations::{derive_relations, derive_relations_from, Relation, RelationKind};
pub use types::SpiderType;
pub use weights::{
    border_margins, check_weights, search_general_weights, select_weights, select_weights_bounded,
    select_weights_with_fallback, BorderMargin, WeightSelection, DEFAULT_MAX_ENTRY,
    DEFAULT_WEIGHT_BOUND,
};
