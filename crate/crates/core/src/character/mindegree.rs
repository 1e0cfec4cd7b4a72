//! Minimal faithful real degree as an exact weighted set cover.
//!
//! Each unit "covers" the classes outside its kernel; a set of units is
//! faithful when together they cover every nontrivial class.

use serde::Serialize;

use super::real::RealIrrepUnit;
use crate::error::{Error, Result};
use crate::group::{ConjugacyData, GroupSpec};

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct SearchStats {
    /// Units after removing duplicate kernels and dominated covers.
    pub candidate_units: usize,
    pub nodes: u64,
    pub pruned: u64,
    /// The whole tree was explored, so the minimum is certified.
    pub exhausted: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MinDegreeResult {
    pub group: GroupSpec,
    pub degree: u64,
    pub witness: Vec<RealIrrepUnit>,
    pub stats: SearchStats,
}

#[derive(Clone, PartialEq, Eq)]
struct Bits(Vec<u64>);

impl Bits {
    fn new(n: usize) -> Self {
        Bits(vec![0; n.div_ceil(64)])
    }
    fn set(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }
    fn get(&self, i: usize) -> bool {
        self.0[i / 64] >> (i % 64) & 1 == 1
    }
    fn is_empty(&self) -> bool {
        self.0.iter().all(|&w| w == 0)
    }
    fn minus(&self, other: &Bits) -> Bits {
        Bits(self.0.iter().zip(&other.0).map(|(a, b)| a & !b).collect())
    }
    fn is_subset(&self, other: &Bits) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a & !b == 0)
    }
    fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().enumerate().flat_map(|(w, &word)| {
            (0..64).filter(move |b| word >> b & 1 == 1).map(move |b| w * 64 + b)
        })
    }
}

struct Search<'a> {
    cost: &'a [u64],
    cover: &'a [Bits],
    // covering[c] = candidates covering class c, cheapest first
    covering: Vec<Vec<usize>>,
    cheapest: Vec<u64>,
    best: u64,
    best_set: Vec<usize>,
    chosen: Vec<usize>,
    stats: SearchStats,
}

impl Search<'_> {
    fn run(&mut self, uncovered: &Bits, spent: u64) {
        self.stats.nodes += 1;
        if uncovered.is_empty() {
            if spent < self.best {
                self.best = spent;
                self.best_set = self.chosen.clone();
            }
            return;
        }
        let mut bound = 0;
        let mut branch = None;
        for c in uncovered.ones() {
            bound = bound.max(self.cheapest[c]);
            let n = self.covering[c].len();
            if branch.is_none_or(|(_, m)| n < m) {
                branch = Some((c, n));
            }
        }
        if spent + bound >= self.best {
            self.stats.pruned += 1;
            return;
        }
        let (c, _) = branch.expect("nonempty uncovered set");
        for k in 0..self.covering[c].len() {
            let u = self.covering[c][k];
            if spent + self.cost[u] >= self.best {
                // later candidates are no cheaper
                self.stats.pruned += 1;
                break;
            }
            self.chosen.push(u);
            let rest = uncovered.minus(&self.cover[u]);
            self.run(&rest, spent + self.cost[u]);
            self.chosen.pop();
        }
    }
}

/// Exact minimum of `Σ real_degree` over unit sets whose kernels meet in the
/// identity class, by exhaustive branch and bound.
pub fn min_faithful_real_degree(
    group: &GroupSpec,
    units: &[RealIrrepUnit],
    cd: &ConjugacyData,
) -> Result<MinDegreeResult> {
    let r = cd.len();
    let mut full = Bits::new(r);
    for c in 1..r {
        full.set(c);
    }
    let covers: Vec<Bits> = units
        .iter()
        .map(|u| {
            let mut b = full.clone();
            for &c in &u.kernel {
                if c < r && b.get(c) {
                    b.0[c / 64] &= !(1 << (c % 64));
                }
            }
            b
        })
        .collect();

    // keep one cheapest unit per cover, then drop dominated ones
    let mut order: Vec<usize> = (0..units.len()).filter(|&u| !covers[u].is_empty()).collect();
    order.sort_by_key(|&u| (units[u].real_degree, u));
    let mut candidates: Vec<usize> = Vec::new();
    for &u in &order {
        let dominated = candidates.iter().any(|&v| {
            covers[u].is_subset(&covers[v]) && units[v].real_degree <= units[u].real_degree
        });
        if !dominated {
            candidates.push(u);
        }
    }
    let cost: Vec<u64> = candidates.iter().map(|&u| units[u].real_degree).collect();
    let cover: Vec<Bits> = candidates.iter().map(|&u| covers[u].clone()).collect();
    let mut covering = vec![Vec::new(); r];
    for (k, b) in cover.iter().enumerate() {
        for c in b.ones() {
            covering[c].push(k);
        }
    }
    let mut cheapest = vec![0; r];
    for c in 1..r {
        let Some(&k) = covering[c].first() else {
            return Err(Error::Internal(format!(
                "class {c} of {group} lies in every real irreducible kernel"
            )));
        };
        cheapest[c] = cost[k];
    }
    let total: u64 = cost.iter().sum();
    let mut search = Search {
        cost: &cost,
        cover: &cover,
        covering,
        cheapest,
        best: total + 1,
        best_set: Vec::new(),
        chosen: Vec::new(),
        stats: SearchStats {
            candidate_units: candidates.len(),
            ..Default::default()
        },
    };
    search.run(&full, 0);
    search.stats.exhausted = true;
    if search.best > total {
        return Err(Error::Internal(format!("no faithful unit set found for {group}")));
    }
    let mut picked: Vec<usize> = search.best_set.iter().map(|&k| candidates[k]).collect();
    picked.sort_unstable();
    let witness: Vec<RealIrrepUnit> = picked.iter().map(|&u| units[u].clone()).collect();
    let result = MinDegreeResult {
        group: group.clone(),
        degree: search.best,
        witness,
        stats: search.stats,
    };
    check_witness(&result, r)?;
    Ok(result)
}

/// True when the units' kernels intersect in the identity class alone.
pub fn is_faithful(units: &[RealIrrepUnit], class_count: usize) -> bool {
    (1..class_count).all(|c| units.iter().any(|u| !u.kernel.contains(&c)))
}

fn check_witness(result: &MinDegreeResult, r: usize) -> Result<()> {
    let w = &result.witness;
    let sum: u64 = w.iter().map(|u| u.real_degree).sum();
    if sum != result.degree || !is_faithful(w, r) {
        return Err(Error::Internal(format!("witness for {} is inconsistent", result.group)));
    }
    for skip in 0..w.len() {
        let rest: Vec<RealIrrepUnit> = w
            .iter()
            .enumerate()
            .filter(|&(k, _)| k != skip)
            .map(|(_, u)| u.clone())
            .collect();
        if is_faithful(&rest, r) {
            return Err(Error::Internal(format!("witness for {} is not minimal", result.group)));
        }
    }
    Ok(())
}
