use serde::Serialize;

use super::real::{real_irrep_units, RealIrrepUnit};
use super::table::{frobenius_schur, CharacterTable, OrthogonalityCheck};
use crate::error::Result;
use crate::group::GroupSpec;

#[derive(Debug, Serialize)]
pub struct ClassExport {
    pub representative: String,
    pub size: u64,
    pub element_order: u64,
    pub centralizer_order: u64,
}

#[derive(Debug, Serialize)]
pub struct ValueExport {
    /// `(k, m_k)`: eigenvalue `ζ^k` with multiplicity `m_k`, `ζ` of order `value_order`.
    pub multiplicities: Vec<(u64, u64)>,
    pub text: String,
}

#[derive(Debug, Serialize)]
pub struct RowExport {
    pub degree: u64,
    pub indicator: i8,
    pub values: Vec<ValueExport>,
}

/// Serializable view of a character table with indicators and real units.
#[derive(Debug, Serialize)]
pub struct TableExport {
    pub group: GroupSpec,
    pub group_name: String,
    pub order: u64,
    pub value_order: u64,
    pub prime: Option<u64>,
    pub orthogonality_check: OrthogonalityCheck,
    pub classes: Vec<ClassExport>,
    pub rows: Vec<RowExport>,
    pub units: Vec<RealIrrepUnit>,
}

pub fn export_table(table: &CharacterTable) -> Result<TableExport> {
    let classes = table
        .classes
        .classes
        .iter()
        .map(|c| ClassExport {
            representative: c.representative.to_string(),
            size: c.size,
            element_order: c.element_order,
            centralizer_order: c.centralizer_order,
        })
        .collect();
    let rows = table
        .rows
        .iter()
        .enumerate()
        .map(|(k, row)| {
            Ok(RowExport {
                degree: table.degrees[k],
                indicator: frobenius_schur(table, k)?,
                values: row
                    .iter()
                    .map(|v| ValueExport {
                        multiplicities: v.terms().to_vec(),
                        text: v.to_string(),
                    })
                    .collect(),
            })
        })
        .collect::<Result<_>>()?;
    Ok(TableExport {
        group: table.spec.clone(),
        group_name: table.spec.to_string(),
        order: table.group_order(),
        value_order: table.value_order,
        prime: table.prime,
        orthogonality_check: table.check,
        classes,
        rows,
        units: real_irrep_units(table)?,
    })
}
