use spheract_core::character::{
    character_table, dimension_gap, frobenius_schur, real_irrep_units, CharacterTable,
};
use spheract_core::group::{construct_group, GroupElement, GroupOptions, Q8Element};

fn table(s: &str) -> CharacterTable {
    character_table(&construct_group(&s.parse().unwrap(), &GroupOptions::default()).unwrap()).unwrap()
}

/// `Σ_c |c| a(c) conj(b(c))` as canonical coefficients in the value field.
fn inner(t: &CharacterTable, a: &[spheract_core::character::CyclotomicValue], b: &[spheract_core::character::CyclotomicValue]) -> Vec<i64> {
    let e = t.value_order;
    let mut acc: Vec<i64> = Vec::new();
    for (c, class) in t.classes.classes.iter().enumerate() {
        let v = a[c].tensor(&b[c].conjugate()).canonical_in(e);
        if acc.is_empty() {
            acc = vec![0; v.len()];
        }
        for (x, y) in acc.iter_mut().zip(v) {
            *x += class.size as i64 * y;
        }
    }
    acc
}

fn expect_scalar(v: &[i64], n: i64) -> bool {
    v.first() == Some(&n) && v[1..].iter().all(|&x| x == 0)
}

const SUITE: &[&str] = &["q8", "cyclic(12)", "alt(5)", "sym(5)", "alt(6)", "alt(7)", "milnor(3,5,1)", "milnor(3,7,5)"];

#[test]
fn orthogonality_and_degree_sums() {
    for s in SUITE {
        let t = table(s);
        let n = t.group_order() as i64;
        let r = t.class_count();
        assert_eq!(t.rows.len(), r, "{s}");
        assert_eq!(t.degrees.iter().map(|d| d * d).sum::<u64>(), n as u64, "{s}");
        for i in 0..r {
            for j in 0..r {
                let v = inner(&t, &t.rows[i], &t.rows[j]);
                assert!(expect_scalar(&v, if i == j { n } else { 0 }), "{s} rows {i},{j}: {v:?}");
            }
        }
        // columns: Σ_χ χ(c) conj χ(d) = δ |C(c)|
        let e = t.value_order;
        for c in 0..r {
            for d in 0..r {
                let mut acc = vec![0i64; 0];
                for row in &t.rows {
                    let v = row[c].tensor(&row[d].conjugate()).canonical_in(e);
                    if acc.is_empty() {
                        acc = vec![0; v.len()];
                    }
                    for (x, y) in acc.iter_mut().zip(v) {
                        *x += y;
                    }
                }
                let z = t.classes.classes[c].centralizer_order as i64;
                assert!(expect_scalar(&acc, if c == d { z } else { 0 }), "{s} columns {c},{d}");
            }
        }
        // floating point cross-check of the first row sums
        for row in &t.rows {
            let (re, im) = row.iter().zip(&t.classes.classes).fold((0.0, 0.0), |(a, b), (v, c)| {
                let (x, y) = v.to_complex();
                (a + c.size as f64 * x, b + c.size as f64 * y)
            });
            let expected = if row.iter().all(|v| v.as_integer() == Some(1)) { n as f64 } else { 0.0 };
            assert!((re - expected).abs() < 1e-6 && im.abs() < 1e-6, "{s}");
        }
    }
}

/// 2x2 Gaussian-integer matrices `[[a, b], [c, d]]` with entries `(re, im)`.
type M = [[(i64, i64); 2]; 2];

fn mul(x: &M, y: &M) -> M {
    let m = |a: (i64, i64), b: (i64, i64)| (a.0 * b.0 - a.1 * b.1, a.0 * b.1 + a.1 * b.0);
    let add = |a: (i64, i64), b: (i64, i64)| (a.0 + b.0, a.1 + b.1);
    let mut out = [[(0, 0); 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            out[i][j] = add(m(x[i][0], y[0][j]), m(x[i][1], y[1][j]));
        }
    }
    out
}

#[test]
fn q8_indicators_match_explicit_matrices() {
    let t = table("q8");
    let ind: Vec<i8> = (0..5).map(|r| frobenius_schur(&t, r).unwrap()).collect();
    assert_eq!(ind.iter().filter(|&&i| i == 1).count(), 4);
    let minus: Vec<usize> = (0..5).filter(|&r| ind[r] == -1).collect();
    assert_eq!(minus.len(), 1);
    assert_eq!(t.degrees[minus[0]], 2);

    // i -> diag(i, -i), j -> [[0, 1], [-1, 0]]
    let mi: M = [[(0, 1), (0, 0)], [(0, 0), (0, -1)]];
    let mj: M = [[(0, 0), (1, 0)], [(-1, 0), (0, 0)]];
    let mut elems: Vec<(Q8Element, M)> = vec![(Q8Element::ONE, [[(1, 0), (0, 0)], [(0, 0), (1, 0)]])];
    let mut k = 0;
    while k < elems.len() {
        let (q, m) = elems[k];
        for (g, mg) in [(Q8Element::I, mi), (Q8Element::J, mj)] {
            let p = q * g;
            if !elems.iter().any(|(x, _)| *x == p) {
                elems.push((p, mul(&m, &mg)));
            }
        }
        k += 1;
    }
    assert_eq!(elems.len(), 8);
    // indicator (1/8) Σ tr(ρ(g)^2)
    let s: i64 = elems.iter().map(|(_, m)| { let sq = mul(m, m); sq[0][0].0 + sq[1][1].0 }).sum();
    assert_eq!(s / 8, -1);
    // the explicit trace is the degree-2 row
    for (c, class) in t.classes.classes.iter().enumerate() {
        let GroupElement::Quaternion(q) = class.representative else { panic!("not a quaternion") };
        let m = elems.iter().find(|(x, _)| *x == q).unwrap().1;
        let tr = (m[0][0].0 + m[1][1].0, m[0][0].1 + m[1][1].1);
        assert_eq!(tr.1, 0);
        assert_eq!(t.value(minus[0], c).as_integer(), Some(tr.0));
    }
}

#[test]
fn z5_conjugate_pairs() {
    let t = table("cyclic(5)");
    // (1/5) Σ_g ζ^{2kg} vanishes unless 5 | 2k
    let ind: Vec<i8> = (0..5).map(|r| frobenius_schur(&t, r).unwrap()).collect();
    assert_eq!(ind, vec![1, 0, 0, 0, 0]);
    let units = real_irrep_units(&t).unwrap();
    let pairs: Vec<_> = units.iter().filter(|u| u.indicator == 0).collect();
    assert_eq!(pairs.len(), 2);
    for u in pairs {
        assert_eq!(u.rows.len(), 2);
        assert_eq!(u.real_degree, 2);
        assert_eq!(t.conjugate_row(u.rows[0]), Some(u.rows[1]));
    }
}

#[test]
fn alternating_dimension_gaps() {
    // Atlas degrees
    let a7 = table("alt(7)");
    assert_eq!(a7.degrees, vec![1, 6, 10, 10, 14, 14, 15, 21, 35]);
    let gap = dimension_gap(&a7, 10);
    assert_eq!(gap.len(), 1);
    assert_eq!(gap[0].1, 6);
    let a8 = table("alt(8)");
    assert_eq!(a8.degrees, vec![1, 7, 14, 20, 21, 21, 21, 28, 35, 45, 45, 56, 64, 70]);
    let gap = dimension_gap(&a8, 11);
    assert_eq!(gap.len(), 1);
    assert_eq!(gap[0].1, 7);
}
