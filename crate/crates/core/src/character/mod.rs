//! Exact character theory: character tables, Frobenius–Schur indicators,
//! real irreducible units and minimal faithful real degrees.

mod cyclotomic;
mod dixon;
mod export;
mod mindegree;
mod obstruction;
mod product;
mod real;
mod table;

pub use cyclotomic::{cyclotomic_polynomial, CyclotomicValue};
pub use dixon::{character_table, class_matrices, dixon_character_table, dixon_prime, PRIME_SEARCH_CEILING};
pub use export::{export_table, ClassExport, RowExport, TableExport, ValueExport};
pub use mindegree::{is_faithful, min_faithful_real_degree, MinDegreeResult, SearchStats};
pub use obstruction::{analyze_group, embedding_obstruction, Embedding, EmbeddingReport, GroupAnalysis};
pub use product::product_character_table;
pub use real::{real_irrep_units, RealIrrepUnit};
pub use table::{dimension_gap, frobenius_schur, CharacterTable, OrthogonalityCheck, DIRECT_CHECK_CLASS_LIMIT};
