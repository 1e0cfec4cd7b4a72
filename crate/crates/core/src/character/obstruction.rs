use serde::Serialize;

use super::dixon::character_table;
use super::mindegree::{min_faithful_real_degree, MinDegreeResult};
use super::real::{real_irrep_units, RealIrrepUnit};
use super::table::CharacterTable;
use crate::error::Result;
use crate::group::{construct_group, GroupOptions, GroupSpec};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Embedding {
    EmbedsPossible,
    Obstructed,
}

/// Whether a group can be a subgroup of `O(m)`, with the supporting search.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EmbeddingReport {
    pub group: GroupSpec,
    pub m: u64,
    pub verdict: Embedding,
    pub min_degree: MinDegreeResult,
}

impl EmbeddingReport {
    pub fn from_min_degree(min_degree: MinDegreeResult, m: u64) -> Self {
        let verdict = if min_degree.degree > m {
            Embedding::Obstructed
        } else {
            Embedding::EmbedsPossible
        };
        EmbeddingReport {
            group: min_degree.group.clone(),
            m,
            verdict,
            min_degree,
        }
    }

    pub fn is_obstructed(&self) -> bool {
        self.verdict == Embedding::Obstructed
    }
}

/// Table, real units and minimal faithful degree of one group.
#[derive(Debug)]
pub struct GroupAnalysis {
    pub table: CharacterTable,
    pub units: Vec<RealIrrepUnit>,
    pub min_degree: MinDegreeResult,
}

pub fn analyze_group(spec: &GroupSpec, options: &GroupOptions) -> Result<GroupAnalysis> {
    let g = construct_group(spec, options)?;
    let table = character_table(&g)?;
    let units = real_irrep_units(&table)?;
    let min_degree = min_faithful_real_degree(spec, &units, &table.classes)?;
    Ok(GroupAnalysis {
        table,
        units,
        min_degree,
    })
}

/// Obstructed iff the minimal faithful real degree exceeds `m`.
pub fn embedding_obstruction(
    spec: &GroupSpec,
    m: u64,
    options: &GroupOptions,
) -> Result<EmbeddingReport> {
    let analysis = analyze_group(spec, options)?;
    Ok(EmbeddingReport::from_min_degree(analysis.min_degree, m))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn obstructed(s: &str, m: u64) -> bool {
        embedding_obstruction(&s.parse().unwrap(), m, &GroupOptions::default())
            .unwrap()
            .is_obstructed()
    }

    #[test]
    fn examples() {
        assert!(!obstructed("q8", 4));
        assert!(obstructed("q8", 3));
        assert!(obstructed("milnor(3,5,1)", 4));
    }

    #[test]
    fn monotone_in_m() {
        let a = analyze_group(&"milnor(3,5,1)".parse().unwrap(), &GroupOptions::default()).unwrap();
        let d = a.min_degree.degree;
        for m in 0..d + 3 {
            let r = EmbeddingReport::from_min_degree(a.min_degree.clone(), m);
            assert_eq!(r.is_obstructed(), m < d);
        }
    }
}
