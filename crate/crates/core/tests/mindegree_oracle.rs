use proptest::prelude::*;
use spheract_core::character::{analyze_group, embedding_obstruction, CharacterTable, RealIrrepUnit};
use spheract_core::group::{GroupOptions, GroupSpec};

/// Classes where every row of the unit takes its degree, read off the table values.
fn unit_kernel(t: &CharacterTable, u: &RealIrrepUnit) -> Vec<bool> {
    (0..t.class_count())
        .map(|c| u.rows.iter().all(|&r| t.value(r, c).as_integer() == Some(t.degrees[r] as i64)))
        .collect()
}

/// Minimum over all subsets of real units whose kernels meet in the identity.
fn brute_force(t: &CharacterTable, units: &[RealIrrepUnit]) -> u64 {
    let kernels: Vec<Vec<bool>> = units.iter().map(|u| unit_kernel(t, u)).collect();
    let r = t.class_count();
    let identity: Vec<usize> = (0..r).filter(|&c| t.classes.classes[c].size == 1 && kernels.iter().all(|k| k[c])).collect();
    assert!(!units.is_empty() && units.len() <= 20);
    let mut best = u64::MAX;
    for mask in 0u32..(1 << units.len()) {
        let chosen = || (0..units.len()).filter(move |&i| mask >> i & 1 == 1);
        let faithful = (0..r).all(|c| identity.contains(&c) || chosen().any(|i| !kernels[i][c]));
        if faithful {
            best = best.min(chosen().map(|i| units[i].real_degree).sum());
        }
    }
    best
}

#[test]
fn small_groups_match_exhaustive_search() {
    let cases = [
        "cyclic(1)", "cyclic(2)", "cyclic(7)", "cyclic(12)", "q8", "alt(4)", "sym(3)", "sym(4)", "alt(5)",
        "product(cyclic(2),cyclic(2))", "product(q8,cyclic(3))", "product(sym(3),cyclic(4))",
        "product(q8,cyclic(4))", "product(cyclic(2),q8)",
    ];
    for s in cases {
        let a = analyze_group(&s.parse().unwrap(), &GroupOptions::default()).unwrap();
        assert!(a.table.group_order() <= 64, "{s}");
        let oracle = brute_force(&a.table, &a.units);
        assert_eq!(a.min_degree.degree, oracle, "{s}");
        for u in &a.units {
            let k = unit_kernel(&a.table, u);
            let listed: Vec<usize> = (0..k.len()).filter(|&c| k[c]).collect();
            assert_eq!(u.kernel, listed, "{s}");
        }
    }
    let q8 = analyze_group(&GroupSpec::Q8, &GroupOptions::default()).unwrap();
    assert_eq!(q8.min_degree.degree, 4);
}

#[test]
fn milnor_groups_need_more_than_four_dimensions() {
    for s in ["milnor(3,5,1)", "milnor(3,7,5)"] {
        let r = embedding_obstruction(&s.parse().unwrap(), 4, &GroupOptions::default()).unwrap();
        assert!(r.is_obstructed(), "{s}");
        assert!(r.min_degree.stats.exhausted);
    }
}

#[test]
fn milnor_degree_six_construction() {
    // a quaternionic 4-dim piece through a binary dihedral quotient, plus a 2-dim piece for the rest
    let a = analyze_group(&GroupSpec::milnor(3, 5, 1), &GroupOptions::default()).unwrap();
    assert_eq!(a.min_degree.degree, 6);
    let mut degrees: Vec<u64> = a.min_degree.witness.iter().map(|u| u.real_degree).collect();
    degrees.sort_unstable();
    assert_eq!(degrees, vec![2, 4]);
}

/// Invariant factors of `Z_n1 × ... × Z_nk` by repeated gcd/lcm.
fn invariant_factors(orders: &[u64]) -> Vec<u64> {
    fn gcd(a: u64, b: u64) -> u64 {
        if b == 0 { a } else { gcd(b, a % b) }
    }
    let mut v: Vec<u64> = orders.iter().copied().filter(|&n| n > 1).collect();
    loop {
        let mut changed = false;
        for i in 0..v.len() {
            for j in i + 1..v.len() {
                let (a, b) = (v[i], v[j]);
                if b % a != 0 {
                    let g = gcd(a, b);
                    v[i] = g;
                    v[j] = a / g * b;
                    changed = true;
                }
            }
        }
        v.retain(|&n| n > 1);
        if !changed {
            break;
        }
    }
    v.sort_unstable();
    v
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]
    #[test]
    fn abelian_minimal_degree(orders in proptest::collection::vec(1u64..=8, 1..=3)) {
        let spec = orders[1..].iter().fold(GroupSpec::Cyclic(orders[0]), |g, &n| GroupSpec::product(g, GroupSpec::Cyclic(n)));
        let a = analyze_group(&spec, &GroupOptions::default()).unwrap();
        let expected: u64 = invariant_factors(&orders).iter().map(|&d| if d == 2 { 1 } else { 2 }).sum();
        prop_assert_eq!(a.min_degree.degree, expected);
    }
}

#[test]
fn invariant_factor_oracle() {
    assert_eq!(invariant_factors(&[2, 3]), vec![6]);
    assert_eq!(invariant_factors(&[4, 6]), vec![2, 12]);
    assert_eq!(invariant_factors(&[2, 2, 1]), vec![2, 2]);
    assert_eq!(invariant_factors(&[8, 4, 6]), vec![2, 4, 24]);
}
