use num_bigint::BigInt;
use proptest::prelude::*;
use spheract_core::linalg::{
    pf_simultaneous_eigenbasis, smith_decomposition, smith_normal_form, sparse_smith_normal_form, IntMatrix,
    PrimeFieldMatrix, SparseIntMatrix,
};

fn matrix_strategy() -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1usize..6, 1usize..6).prop_flat_map(|(r, c)| prop::collection::vec(prop::collection::vec(-6i64..=6, c), r))
}

/// Product of random elementary operations: determinant ±1.
fn unimodular(n: usize, ops: &[(usize, usize, i64)]) -> IntMatrix {
    let mut m = IntMatrix::identity(n);
    for &(i, j, k) in ops {
        let (i, j) = (i % n, j % n);
        if i == j {
            // negate a row
            for c in 0..n {
                let v = -m.get(i, c).clone();
                m.set(i, c, v);
            }
        } else {
            for c in 0..n {
                let v = m.get(i, c) + m.get(j, c) * k;
                m.set(i, c, v);
            }
        }
    }
    m
}

/// Rank over Q by fraction-free Gaussian elimination.
fn bareiss_rank(rows: &[Vec<i64>]) -> usize {
    let mut a: Vec<Vec<i128>> = rows.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
    let (n, m) = (a.len(), a[0].len());
    let mut rank = 0;
    let mut prev = 1i128;
    for col in 0..m {
        let Some(p) = (rank..n).find(|&i| a[i][col] != 0) else { continue };
        a.swap(rank, p);
        for i in rank + 1..n {
            for j in col + 1..m {
                a[i][j] = (a[rank][col] * a[i][j] - a[i][col] * a[rank][j]) / prev;
            }
            a[i][col] = 0;
        }
        prev = a[rank][col];
        rank += 1;
        if rank == n {
            break;
        }
    }
    rank
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn snf_is_invariant_under_unimodular_change(
        rows in matrix_strategy(),
        left_ops in prop::collection::vec((0usize..6, 0usize..6, -3i64..=3), 0..8),
        right_ops in prop::collection::vec((0usize..6, 0usize..6, -3i64..=3), 0..8),
    ) {
        let a = IntMatrix::from_rows(&rows).unwrap();
        let p = unimodular(a.rows(), &left_ops);
        let q = unimodular(a.cols(), &right_ops);
        let paq = p.mul(&a).unwrap().mul(&q).unwrap();
        prop_assert_eq!(smith_normal_form(&a), smith_normal_form(&paq));
    }

    #[test]
    fn snf_rank_matches_fraction_free_rank(rows in matrix_strategy()) {
        let a = IntMatrix::from_rows(&rows).unwrap();
        prop_assert_eq!(smith_normal_form(&a).rank, bareiss_rank(&rows));
    }

    #[test]
    fn snf_diagonal_divides_and_transforms_reproduce_it(rows in matrix_strategy()) {
        let a = IntMatrix::from_rows(&rows).unwrap();
        let d = smith_decomposition(&a);
        for w in d.form.diagonal.windows(2) {
            prop_assert_eq!(&w[1] % &w[0], BigInt::from(0));
        }
        let prod = d.left.mul(&a).unwrap().mul(&d.right).unwrap();
        for i in 0..prod.rows() {
            for j in 0..prod.cols() {
                let expected = if i == j && i < d.form.rank {
                    prod.get(i, i).clone()
                } else {
                    BigInt::from(0)
                };
                prop_assert_eq!(prod.get(i, j), &expected);
            }
        }
        let mut diag: Vec<BigInt> = (0..d.form.rank).map(|i| prod.get(i, i).magnitude().clone().into()).collect();
        diag.sort();
        let mut expected = d.form.diagonal.clone();
        expected.sort();
        prop_assert_eq!(diag, expected);
    }

    #[test]
    fn sparse_snf_matches_dense(rows in matrix_strategy()) {
        let mut s = SparseIntMatrix::new(rows.len(), rows[0].len());
        for (i, r) in rows.iter().enumerate() {
            for (j, &v) in r.iter().enumerate() {
                s.push(i, j, v);
            }
        }
        prop_assert_eq!(sparse_smith_normal_form(&s), smith_normal_form(&IntMatrix::from_rows(&rows).unwrap()));
    }

    #[test]
    fn eigenvectors_are_eigenvectors(
        n in 1usize..6,
        d1 in prop::collection::vec(0u64..7, 6),
        d2 in prop::collection::vec(0u64..7, 6),
        ops in prop::collection::vec((0usize..6, 0usize..6, 1u64..97), 0..10),
    ) {
        let p = 97;
        // S D S^-1 with S a product of elementary matrices, so the family commutes and diagonalizes
        let elementary = |i: usize, j: usize, k: u64| {
            let mut e = PrimeFieldMatrix::identity(p, n).unwrap();
            e.set(i, j, k);
            e
        };
        let conjugate = |d: &[u64]| {
            let mut m = PrimeFieldMatrix::zeros(p, n, n).unwrap();
            for (i, &x) in d.iter().take(n).enumerate() {
                m.set(i, i, x);
            }
            for &(i, j, k) in &ops {
                let (i, j) = (i % n, j % n);
                if i == j {
                    continue;
                }
                m = elementary(i, j, k).mul(&m).unwrap().mul(&elementary(i, j, p - k)).unwrap();
            }
            m
        };
        let a = conjugate(&d1);
        let b = conjugate(&d2);
        let spaces = pf_simultaneous_eigenbasis(&[a.clone(), b.clone()], p).unwrap();
        let total: usize = spaces.iter().map(|s| s.basis.len()).sum();
        prop_assert_eq!(total, n);
        for s in &spaces {
            for v in &s.basis {
                prop_assert!(v.iter().any(|&x| x != 0));
                for (m, &lambda) in [&a, &b].into_iter().zip(&s.eigenvalues) {
                    let mv = m.mul_vec(v);
                    let lv: Vec<u64> = v.iter().map(|&x| x * lambda % p).collect();
                    prop_assert_eq!(mv, lv);
                }
            }
        }
    }
}
