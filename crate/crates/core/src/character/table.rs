use std::cmp::Ordering;
use std::sync::Arc;

use serde::Serialize;

use super::cyclotomic::{CyclotomicValue, GroupRingSum};
use crate::error::{Error, Result};
use crate::group::{ConjugacyData, GroupSpec};

/// Above this many classes, product tables are checked through their factors.
pub const DIRECT_CHECK_CLASS_LIMIT: usize = 100;

/// How a table's orthogonality relations were established.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum OrthogonalityCheck {
    /// Every row and column relation evaluated exactly.
    Direct,
    /// Both factor tables checked directly; the product relations are the
    /// products of the factor relations.
    Factorwise,
}

type RowKey = (bool, u64, Vec<Vec<i64>>, Vec<CyclotomicValue>);

/// Exact table of complex irreducible characters.
#[derive(Debug)]
pub struct CharacterTable {
    pub spec: GroupSpec,
    pub classes: Arc<ConjugacyData>,
    /// `rows[r][c]` = value of character `r` on class `c`; all in order `value_order`.
    pub rows: Vec<Vec<CyclotomicValue>>,
    pub degrees: Vec<u64>,
    pub value_order: u64,
    /// Prime used by the modular eigenvector computation (none for product tables).
    pub prime: Option<u64>,
    pub check: OrthogonalityCheck,
    pub(crate) factors: Option<(Arc<CharacterTable>, Arc<CharacterTable>)>,
}

impl CharacterTable {
    /// Sorts rows (trivial first, then by degree and value order) and verifies
    /// the table. A failed check is an internal error.
    pub(crate) fn assemble(
        spec: GroupSpec,
        classes: Arc<ConjugacyData>,
        rows: Vec<Vec<CyclotomicValue>>,
        prime: Option<u64>,
        factors: Option<(Arc<CharacterTable>, Arc<CharacterTable>)>,
    ) -> Result<CharacterTable> {
        let value_order = classes.exponent;
        let rows: Vec<Vec<CyclotomicValue>> = rows
            .into_iter()
            .map(|r| r.into_iter().map(|v| v.lift(value_order)).collect())
            .collect();
        // (nontrivial, degree, canonical values, row) sorts rows deterministically
        let mut keyed: Vec<RowKey> = rows
            .into_iter()
            .map(|r| {
                let degree = r.first().map(CyclotomicValue::total).unwrap_or(0);
                let trivial = degree == 1 && r.iter().all(CyclotomicValue::is_kernel_value);
                let key = r.iter().map(CyclotomicValue::canonical).collect();
                (!trivial, degree, key, r)
            })
            .collect();
        keyed.sort_by(|a, b| match (a.0, a.1).cmp(&(b.0, b.1)) {
            Ordering::Equal => a.2.cmp(&b.2),
            o => o,
        });
        let degrees = keyed.iter().map(|k| k.1).collect();
        let rows = keyed.into_iter().map(|k| k.3).collect();
        let check = match &factors {
            Some(_) if classes.len() > DIRECT_CHECK_CLASS_LIMIT => OrthogonalityCheck::Factorwise,
            _ => OrthogonalityCheck::Direct,
        };
        let table = CharacterTable {
            spec,
            classes,
            rows,
            degrees,
            value_order,
            prime,
            check,
            factors,
        };
        table.verify()?;
        Ok(table)
    }

    pub fn class_count(&self) -> usize {
        self.classes.len()
    }

    pub fn group_order(&self) -> u64 {
        self.classes.group_order()
    }

    pub fn value(&self, row: usize, class: usize) -> &CyclotomicValue {
        &self.rows[row][class]
    }

    /// Factor tables when this is a product table.
    pub fn factors(&self) -> Option<(&CharacterTable, &CharacterTable)> {
        self.factors.as_ref().map(|(a, b)| (a.as_ref(), b.as_ref()))
    }

    /// Re-runs all consistency checks.
    pub fn verify(&self) -> Result<()> {
        let fail = |msg: String| Err(Error::Internal(format!("character table of {}: {msg}", self.spec)));
        let r = self.class_count();
        if self.rows.len() != r {
            return fail(format!("{} rows for {r} classes", self.rows.len()));
        }
        if self.rows.iter().any(|row| row.len() != r) {
            return fail("ragged row".into());
        }
        let square_sum: u128 = self.degrees.iter().map(|&d| d as u128 * d as u128).sum();
        if square_sum != self.group_order() as u128 {
            return fail(format!("degree squares sum to {square_sum}, not {}", self.group_order()));
        }
        let trivial_first = self.degrees.first() == Some(&1)
            && self.rows[0].iter().all(CyclotomicValue::is_kernel_value);
        if !trivial_first {
            return fail("first row is not the trivial character".into());
        }
        for (k, row) in self.rows.iter().enumerate() {
            if row.iter().any(|v| v.total() != self.degrees[k]) {
                return fail(format!("row {k} has values with inconsistent multiplicity totals"));
            }
        }
        match self.check {
            OrthogonalityCheck::Direct => {
                if let Some((a, b)) = self.row_orthogonality_failure() {
                    return fail(format!("rows {a} and {b} violate orthogonality"));
                }
                if let Some((a, b)) = self.column_orthogonality_failure() {
                    return fail(format!("columns {a} and {b} violate orthogonality"));
                }
            }
            OrthogonalityCheck::Factorwise => {
                let Some((a, b)) = self.factors() else {
                    return fail("factorwise check without factor tables".into());
                };
                if a.check != OrthogonalityCheck::Direct || b.check != OrthogonalityCheck::Direct {
                    return fail("factor tables were not checked directly".into());
                }
                a.verify()?;
                b.verify()?;
            }
        }
        Ok(())
    }

    /// First pair of rows violating `Σ |C_i| χ(g_i) conj ψ(g_i) = |G| δ`.
    pub fn row_orthogonality_failure(&self) -> Option<(usize, usize)> {
        let n = self.group_order() as i128;
        for a in 0..self.rows.len() {
            for b in a..self.rows.len() {
                let mut sum = GroupRingSum::new(self.value_order);
                for (c, info) in self.classes.classes.iter().enumerate() {
                    sum.add_product(info.size as i128, &self.rows[a][c], &self.rows[b][c], true);
                }
                let expected = if a == b { n } else { 0 };
                if sum.as_integer() != Some(expected) {
                    return Some((a, b));
                }
            }
        }
        None
    }

    /// First pair of classes violating `Σ_χ χ(g_i) conj χ(g_j) = δ |C_G(g_i)|`.
    pub fn column_orthogonality_failure(&self) -> Option<(usize, usize)> {
        let r = self.class_count();
        for i in 0..r {
            for j in i..r {
                let mut sum = GroupRingSum::new(self.value_order);
                for row in &self.rows {
                    sum.add_product(1, &row[i], &row[j], true);
                }
                let expected = if i == j {
                    self.classes.classes[i].centralizer_order as i128
                } else {
                    0
                };
                if sum.as_integer() != Some(expected) {
                    return Some((i, j));
                }
            }
        }
        None
    }

    /// Index of the row whose values are the complex conjugates of `row`.
    pub fn conjugate_row(&self, row: usize) -> Option<usize> {
        let target: Vec<Vec<i64>> = (0..self.class_count())
            .map(|c| self.rows[row][self.classes.inverse_class(c)].canonical())
            .collect();
        (0..self.rows.len()).find(|&k| {
            self.degrees[k] == self.degrees[row]
                && (0..self.class_count()).all(|c| self.rows[k][c].canonical() == target[c])
        })
    }

    /// Classes on which row `row` takes the value `χ(1)`.
    pub fn kernel(&self, row: usize) -> Vec<usize> {
        (0..self.class_count())
            .filter(|&c| self.rows[row][c].is_kernel_value())
            .collect()
    }
}

/// Frobenius–Schur indicator `|G|⁻¹ Σ_g χ(g²)` of one row.
pub fn frobenius_schur(table: &CharacterTable, row: usize) -> Result<i8> {
    let mut sum = GroupRingSum::new(table.value_order);
    for (c, info) in table.classes.classes.iter().enumerate() {
        let sq = table.classes.power_class_map(c, 2);
        sum.add(info.size as i128, &table.rows[row][sq]);
    }
    let n = table.group_order() as i128;
    match sum.as_integer() {
        Some(s) if s == n => Ok(1),
        Some(0) => Ok(0),
        Some(s) if s == -n => Ok(-1),
        other => Err(Error::Internal(format!(
            "indicator sum {other:?} of row {row} of {} is not in {{-|G|, 0, |G|}}",
            table.spec
        ))),
    }
}

/// Nontrivial rows of degree below `bound`, as `(row, degree)`.
pub fn dimension_gap(table: &CharacterTable, bound: u64) -> Vec<(usize, u64)> {
    table
        .degrees
        .iter()
        .enumerate()
        .skip(1)
        .filter(|(_, &d)| d < bound)
        .map(|(k, &d)| (k, d))
        .collect()
}
