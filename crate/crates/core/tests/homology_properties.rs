use proptest::prelude::*;
use spheract_core::simplicial::{
    build_complex, homology, is_homology_sphere, join, suspension, SimplicialComplex, VertexLabel,
};

fn from_sets(sets: Vec<Vec<u32>>) -> SimplicialComplex {
    let mut sets: Vec<Vec<u32>> = sets
        .into_iter()
        .map(|mut s| {
            s.sort_unstable();
            s.dedup();
            s
        })
        .collect();
    sets.sort();
    sets.dedup();
    let maximal: Vec<Vec<VertexLabel>> = sets
        .iter()
        .filter(|s| !sets.iter().any(|t| t != *s && s.iter().all(|v| t.contains(v))))
        .map(|s| s.iter().map(|&v| VertexLabel::Index(v)).collect())
        .collect();
    SimplicialComplex::from_facets(maximal).unwrap()
}

fn small_complex(vertices: u32) -> impl Strategy<Value = SimplicialComplex> {
    proptest::collection::vec(proptest::collection::vec(0..vertices, 1..=4), 1..=6).prop_map(from_sets)
}

fn reduced_betti(k: &SimplicialComplex) -> Vec<u64> {
    let h = homology(k).unwrap();
    let top = h.reduced.keys().max().copied().unwrap_or(0);
    (0..=top).map(|d| h.reduced_in(d).betti).collect()
}

#[test]
fn known_spaces() {
    for n in 0..=4 {
        assert!(is_homology_sphere(&SimplicialComplex::sphere(n), n).unwrap());
    }
    let rp2 = build_complex(&"facets(1 2 3; 1 3 4; 1 4 5; 1 5 6; 1 2 6; 2 3 5; 3 4 6; 2 4 5; 3 5 6; 2 4 6)".parse().unwrap()).unwrap();
    let h = homology(&rp2).unwrap();
    assert_eq!(h.reduced_in(1).torsion, vec![2]);
    assert_eq!(h.reduced_in(1).betti, 0);
    assert!(h.reduced_in(0).is_zero() && h.reduced_in(2).is_zero());

    let m3 = SimplicialComplex::poincare_sphere();
    assert!(is_homology_sphere(&m3, 3).unwrap());
    assert!(is_homology_sphere(&join(&m3, &SimplicialComplex::polygon(3).unwrap()), 5).unwrap());
    assert!(is_homology_sphere(&suspension(&suspension(&m3)), 5).unwrap());
    assert!(is_homology_sphere(&join(&m3, &SimplicialComplex::sphere(5)), 9).unwrap());
}

#[test]
fn join_of_spheres() {
    for p in 0..=2 {
        for q in 0..=2 {
            let k = join(&SimplicialComplex::sphere(p), &SimplicialComplex::sphere(q));
            assert!(is_homology_sphere(&k, p + q + 1).unwrap(), "S^{p} * S^{q}");
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn euler_characteristic_agrees(k in small_complex(7)) {
        let h = homology(&k).unwrap();
        prop_assert_eq!(h.euler_characteristic, h.betti_euler_characteristic());
    }

    #[test]
    fn suspension_shifts_reduced_homology(k in small_complex(7)) {
        let h = homology(&k).unwrap();
        let s = homology(&suspension(&k)).unwrap();
        prop_assert!(s.reduced_in(0).is_zero());
        for (&d, g) in &h.reduced {
            prop_assert_eq!(&s.reduced_in(d + 1), g);
        }
    }

    #[test]
    fn join_betti_numbers_convolve(k in small_complex(5), l in small_complex(5)) {
        let bk = reduced_betti(&k);
        let bl = reduced_betti(&l);
        let bj = reduced_betti(&join(&k, &l));
        for (n, &b) in bj.iter().enumerate() {
            let expected: u64 = if n == 0 {
                0
            } else {
                (0..n).map(|i| bk.get(i).copied().unwrap_or(0) * bl.get(n - 1 - i).copied().unwrap_or(0)).sum()
            };
            prop_assert_eq!(b, expected, "degree {}", n);
        }
    }
}
