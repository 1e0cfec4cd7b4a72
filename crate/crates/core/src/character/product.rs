use std::sync::Arc;

use super::table::CharacterTable;
use crate::error::Result;
use crate::group::{product_conjugacy, GroupSpec};

/// Table of `G × H` from the tables of `G` and `H`: classes are pairs and the
/// irreducibles are the products `χ ⊗ ψ`. The product group is never enumerated.
pub fn product_character_table(
    left: Arc<CharacterTable>,
    right: Arc<CharacterTable>,
) -> Result<CharacterTable> {
    let classes = Arc::new(product_conjugacy(left.classes.clone(), right.classes.clone()));
    let (rl, rr) = (left.class_count(), right.class_count());
    let mut rows = Vec::with_capacity(left.rows.len() * right.rows.len());
    for a in &left.rows {
        for b in &right.rows {
            let mut row = Vec::with_capacity(rl * rr);
            for x in a {
                for y in b {
                    row.push(x.tensor(y));
                }
            }
            rows.push(row);
        }
    }
    let spec = GroupSpec::product(left.spec.clone(), right.spec.clone());
    CharacterTable::assemble(spec, classes, rows, None, Some((left, right)))
}
