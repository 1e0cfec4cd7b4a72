//! Simplicial complexes, integral homology and group actions by vertex permutations.

mod action;
mod complex;
mod homology;

pub use action::{fixed_subcomplex, is_free_action, join_actions, make_action, make_action_from_labels, SimplicialAction};
pub use complex::{
    build_complex, join, link, suspension, to_facet_text, ComplexSpec, SimplicialComplex, VertexLabel,
    POINCARE16_FACETS,
};
pub use homology::{boundary_matrix, homology, is_homology_sphere, HomologyGroup, HomologyProfile};
