//! Finite group models: construction, enumeration, conjugacy classes and
//! abelianization.

mod abelian;
mod conjugacy;
mod element;
mod model;
mod spec;

pub use abelian::{abelianization, derived_subgroup, invariants_from_orders, AbelianInvariants, DerivedSubgroup};
pub use conjugacy::{conjugacy_classes, power_class_map, product_conjugacy, ClassInfo, ConjugacyData};
pub use element::{GroupElement, Perm, Q8Element, Unit};
pub use model::{
    construct_group, enumerate_elements, product_group, ElementIndex, GroupModel, GroupOptions,
    DEFAULT_ENUMERATION_BOUND,
};
pub use spec::GroupSpec;
