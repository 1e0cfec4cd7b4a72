//! Exact linear algebra over the integers and over prime fields.

mod int_matrix;
mod prime_field;
mod sparse;

pub use int_matrix::{smith_decomposition, smith_normal_form, IntMatrix, SmithDecomposition, SmithForm};
pub use prime_field::{
    discrete_log_table, inv_mod, is_prime, mul_mod, multiplicative_order, normalize_projective,
    pf_nullspace, pf_simultaneous_eigenbasis, pow_mod, primitive_root, DiscreteLogTable,
    EigenSpace, PrimeFieldMatrix,
};
pub(crate) use prime_field::split_common_eigenspaces;
pub use sparse::{sparse_smith_normal_form, SparseIntMatrix};
