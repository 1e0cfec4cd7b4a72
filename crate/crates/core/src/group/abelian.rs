use std::collections::{BTreeMap, HashSet};

use serde::Serialize;

use super::element::GroupElement;
use super::model::GroupModel;
use crate::error::Result;

/// The commutator subgroup as an explicit element set.
#[derive(Clone, Debug)]
pub struct DerivedSubgroup {
    /// Elements in the deterministic order.
    pub elements: Vec<GroupElement>,
    /// Commutators that generate it, in the order they were added.
    pub generators: Vec<GroupElement>,
    pub is_normal: bool,
}

impl DerivedSubgroup {
    pub fn order(&self) -> u64 {
        self.elements.len() as u64
    }
}

/// Invariant factors `d1 | d2 | ...` (all > 1) of a finite abelian group.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AbelianInvariants {
    pub invariant_factors: Vec<u64>,
}

impl AbelianInvariants {
    pub fn order(&self) -> u64 {
        self.invariant_factors.iter().product()
    }

    pub fn is_trivial(&self) -> bool {
        self.invariant_factors.is_empty()
    }

    /// Combines two groups: `A x B`.
    pub fn product(&self, other: &AbelianInvariants) -> AbelianInvariants {
        let mut parts: BTreeMap<u64, Vec<u32>> = BTreeMap::new();
        for d in self.invariant_factors.iter().chain(&other.invariant_factors) {
            for (p, k) in factorize(*d) {
                parts.entry(p).or_default().push(k);
            }
        }
        from_prime_partitions(parts)
    }
}

fn commutator(g: &GroupModel, x: &GroupElement, y: &GroupElement) -> GroupElement {
    let xy = g.multiply(x, y);
    let yx = g.multiply(y, x);
    g.multiply(&xy, &g.inverse(&yx))
}

/// Commutator subgroup, generated by `[x, s]` for `x` in the group and `s` a generator.
pub fn derived_subgroup(g: &GroupModel) -> Result<DerivedSubgroup> {
    let index = g.enumerate()?;
    let mut generators: Vec<GroupElement> = Vec::new();
    let mut members: HashSet<GroupElement> = HashSet::from([g.identity().clone()]);
    for x in index.elements() {
        for s in g.generators() {
            let c = commutator(g, x, s);
            if !members.contains(&c) {
                generators.push(c);
                members = g.subgroup_closure(&generators);
            }
        }
    }
    let is_normal = generators.iter().all(|h| {
        g.generators()
            .iter()
            .all(|s| members.contains(&g.conjugate(s, h)))
    });
    let mut elements: Vec<GroupElement> = members.into_iter().collect();
    elements.sort();
    Ok(DerivedSubgroup {
        elements,
        generators,
        is_normal,
    })
}

/// Invariant factors of `G / G'`.
pub fn abelianization(g: &GroupModel) -> Result<AbelianInvariants> {
    if let Some((a, b)) = g.factors() {
        return Ok(abelianization(a)?.product(&abelianization(b)?));
    }
    let index = g.enumerate()?;
    let derived = derived_subgroup(g)?;
    let members: HashSet<&GroupElement> = derived.elements.iter().collect();
    let mut coset_seen: HashSet<GroupElement> = HashSet::new();
    let mut coset_orders: Vec<u64> = Vec::new();
    for x in index.elements() {
        if coset_seen.contains(x) {
            continue;
        }
        for h in &derived.elements {
            coset_seen.insert(g.multiply(x, h));
        }
        let mut n = 1u64;
        let mut y = x.clone();
        while !members.contains(&y) {
            y = g.multiply(&y, x);
            n += 1;
        }
        coset_orders.push(n);
    }
    Ok(invariants_from_orders(&coset_orders))
}

/// Recovers invariant factors from the multiset of element orders of an abelian group.
pub fn invariants_from_orders(orders: &[u64]) -> AbelianInvariants {
    let n = orders.len() as u64;
    let mut parts: BTreeMap<u64, Vec<u32>> = BTreeMap::new();
    for (p, e) in factorize(n) {
        // |A[p^k]| = p^(number of cyclic p-parts of exponent >= 1, ..., summed up to k)
        let mut prev_log = 0u32;
        let mut conj = Vec::new();
        for k in 1..=e {
            let pk = p.pow(k);
            let count = orders.iter().filter(|&&o| pk % o == 0 || o == 1).count() as u64;
            let log = ilog(count, p);
            conj.push(log - prev_log);
            prev_log = log;
        }
        // conj[k-1] = #{parts >= k}; transpose to the partition
        let largest = conj.iter().take_while(|&&c| c > 0).count() as u32;
        let mut partition = Vec::new();
        let num_parts = conj.first().copied().unwrap_or(0);
        for i in 0..num_parts {
            let len = (1..=largest).filter(|&k| conj[(k - 1) as usize] > i).count() as u32;
            partition.push(len);
        }
        parts.insert(p, partition);
    }
    from_prime_partitions(parts)
}

fn from_prime_partitions(mut parts: BTreeMap<u64, Vec<u32>>) -> AbelianInvariants {
    let width = parts.values().map(Vec::len).max().unwrap_or(0);
    for v in parts.values_mut() {
        v.sort_unstable_by(|a, b| b.cmp(a));
        v.resize(width, 0);
    }
    let mut factors: Vec<u64> = (0..width)
        .map(|i| parts.iter().map(|(p, v)| p.pow(v[i])).product())
        .filter(|&d| d > 1)
        .collect();
    factors.reverse();
    AbelianInvariants {
        invariant_factors: factors,
    }
}

fn ilog(mut n: u64, p: u64) -> u32 {
    let mut k = 0;
    while n > 1 {
        n /= p;
        k += 1;
    }
    k
}

fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            let mut e = 0;
            while n.is_multiple_of(p) {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::model::{construct_group, GroupOptions};

    fn group(s: &str) -> GroupModel {
        construct_group(&s.parse().unwrap(), &GroupOptions::default()).unwrap()
    }

    fn factors(s: &str) -> Vec<u64> {
        abelianization(&group(s)).unwrap().invariant_factors
    }

    #[test]
    fn derived_orders() {
        for (s, n) in [
            ("q8", 2),
            ("alt(5)", 60),
            ("sym(5)", 60),
            ("alt(4)", 4),
            ("cyclic(9)", 1),
            ("milnor(3,5,1)", 30),
            ("milnor(3,7,5)", 210),
        ] {
            let d = derived_subgroup(&group(s)).unwrap();
            assert_eq!(d.order(), n, "{s}");
            assert!(d.is_normal);
        }
    }

    #[test]
    fn abelianizations() {
        assert_eq!(factors("q8"), vec![2, 2]);
        assert_eq!(factors("milnor(3,5,1)"), vec![2, 2]);
        assert_eq!(factors("milnor(3,7,5)"), vec![2, 2]);
        assert!(factors("alt(7)").is_empty());
        assert_eq!(factors("sym(5)"), vec![2]);
        assert_eq!(factors("alt(4)"), vec![3]);
        assert_eq!(factors("cyclic(12)"), vec![12]);
        assert_eq!(factors("product(cyclic(4),cyclic(6))"), vec![2, 12]);
        assert_eq!(factors("product(q8,alt(7))"), vec![2, 2]);
    }

    #[test]
    fn orders_to_invariants() {
        // Z2 x Z4: orders 1, 2, 2, 2, 4, 4, 4, 4
        let inv = invariants_from_orders(&[1, 2, 2, 2, 4, 4, 4, 4]);
        assert_eq!(inv.invariant_factors, vec![2, 4]);
        let inv = invariants_from_orders(&[1]);
        assert!(inv.is_trivial());
    }
}
