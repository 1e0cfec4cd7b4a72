use serde::Serialize;

use super::table::{frobenius_schur, CharacterTable};
use crate::error::{Error, Result};

/// An irreducible real representation, described by its complex constituents.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RealIrrepUnit {
    /// Frobenius–Schur indicator of the constituents: 1 real, 0 complex, -1 quaternionic.
    pub indicator: i8,
    /// One row, or a conjugate pair for indicator 0.
    pub rows: Vec<usize>,
    pub real_degree: u64,
    /// Classes acting trivially, sorted.
    pub kernel: Vec<usize>,
}

/// Groups the complex irreducibles into real irreducible units, in row order.
pub fn real_irrep_units(table: &CharacterTable) -> Result<Vec<RealIrrepUnit>> {
    let n = table.rows.len();
    let mut taken = vec![false; n];
    let mut units = Vec::new();
    for row in 0..n {
        if taken[row] {
            continue;
        }
        let indicator = frobenius_schur(table, row)?;
        let degree = table.degrees[row];
        let kernel = table.kernel(row);
        taken[row] = true;
        let (rows, real_degree) = match indicator {
            1 => (vec![row], degree),
            -1 => (vec![row], 2 * degree),
            _ => {
                let partner = table
                    .conjugate_row(row)
                    .filter(|&k| k != row && !taken[k])
                    .ok_or_else(|| {
                        Error::Internal(format!("row {row} of {} has no conjugate partner", table.spec))
                    })?;
                taken[partner] = true;
                (vec![row, partner], 2 * degree)
            }
        };
        units.push(RealIrrepUnit {
            indicator,
            rows,
            real_degree,
            kernel,
        });
    }
    Ok(units)
}
