//! Character tables from the eigenvectors of class multiplication matrices
//! over a prime field, lifted back to exact cyclotomic values.

use std::sync::Arc;

use num_integer::Roots;

use super::cyclotomic::CyclotomicValue;
use super::product::product_character_table;
use super::table::CharacterTable;
use crate::error::{Error, Result};
use crate::group::{conjugacy_classes, ConjugacyData, GroupModel};
use crate::linalg::{
    inv_mod, is_prime, mul_mod, pow_mod, primitive_root, split_common_eigenspaces,
    PrimeFieldMatrix,
};

pub const PRIME_SEARCH_CEILING: u64 = 10_000_000;

/// Class multiplication coefficients: `m[j][i][k]` is the number of pairs
/// `(x, y)` in `C_i × C_j` with `x y` equal to the representative of `C_k`.
///
/// With this layout `m[j]` acts on the central-character vector `ω` by the
/// scalar `ω_j`.
pub fn class_matrices(g: &GroupModel, cd: &ConjugacyData) -> Result<Vec<Vec<Vec<u64>>>> {
    if let (Some((ga, gb)), Some((ca, cb))) = (g.factors(), cd.factors()) {
        let ma = class_matrices(ga, ca)?;
        let mb = class_matrices(gb, cb)?;
        return Ok(kronecker(&ma, &mb));
    }
    let index = g.enumerate()?;
    let r = cd.len();
    let mut m = vec![vec![vec![0u64; r]; r]; r];
    for (k, info) in cd.classes.iter().enumerate() {
        let z = &info.representative;
        for (xi, x) in index.elements().iter().enumerate() {
            let y = g.multiply(&g.inverse(x), z);
            let ci = cd
                .class_of_index(xi)
                .ok_or_else(|| Error::Internal("element without class".into()))?;
            let cj = cd
                .class_of(&y)
                .ok_or_else(|| Error::Internal(format!("product {y} has no class")))?;
            m[cj][ci][k] += 1;
        }
    }
    Ok(m)
}

fn kronecker(a: &[Vec<Vec<u64>>], b: &[Vec<Vec<u64>>]) -> Vec<Vec<Vec<u64>>> {
    let (ra, rb) = (a.len(), b.len());
    let r = ra * rb;
    let mut out = vec![vec![vec![0u64; r]; r]; r];
    for ja in 0..ra {
        for jb in 0..rb {
            let j = ja * rb + jb;
            for ia in 0..ra {
                for ib in 0..rb {
                    for ka in 0..ra {
                        let x = a[ja][ia][ka];
                        if x == 0 {
                            continue;
                        }
                        for kb in 0..rb {
                            out[j][ia * rb + ib][ka * rb + kb] = x * b[jb][ib][kb];
                        }
                    }
                }
            }
        }
    }
    out
}

/// Smallest prime `p ≡ 1 (mod e)` with `p > 2√|G|`.
pub fn dixon_prime(exponent: u64, order: u64) -> Result<u64> {
    let mut p = exponent + 1;
    while p <= PRIME_SEARCH_CEILING {
        if (p as u128) * (p as u128) > 4 * order as u128 && is_prime(p) {
            return Ok(p);
        }
        p += exponent;
    }
    Err(Error::PrimeSearch {
        exponent,
        order,
        ceiling: PRIME_SEARCH_CEILING,
    })
}

/// Exact character table. Products are assembled from their factor tables.
pub fn character_table(g: &GroupModel) -> Result<CharacterTable> {
    if let Some((a, b)) = g.factors() {
        let ta = character_table(a)?;
        let tb = character_table(b)?;
        return product_character_table(Arc::new(ta), Arc::new(tb));
    }
    dixon_character_table(g)
}

/// Runs the modular eigenvector method on `g` itself, also for products
/// (whose class matrices are Kronecker products of the factors' matrices).
pub fn dixon_character_table(g: &GroupModel) -> Result<CharacterTable> {
    let cd = Arc::new(conjugacy_classes(g)?);
    let mats = class_matrices(g, &cd)?;
    dixon_table(g, cd, &mats)
}

fn dixon_table(g: &GroupModel, cd: Arc<ConjugacyData>, mats: &[Vec<Vec<u64>>]) -> Result<CharacterTable> {
    let r = cd.len();
    let n = g.order();
    let e = cd.exponent;
    let p = dixon_prime(e, n)?;

    // the class sums commute iff a_ijk = a_jik
    for i in 0..r {
        for j in 0..i {
            for k in 0..r {
                if mats[j][i][k] != mats[i][j][k] {
                    return Err(Error::NonCommuting(i, j));
                }
            }
        }
    }
    let pf: Vec<PrimeFieldMatrix> = mats
        .iter()
        .map(|m| {
            let mut a = PrimeFieldMatrix::zeros(p, r, r)?;
            for (i, row) in m.iter().enumerate() {
                for (k, &x) in row.iter().enumerate() {
                    a.set(i, k, x % p);
                }
            }
            Ok(a)
        })
        .collect::<Result<_>>()?;
    let spaces = split_common_eigenspaces(&pf, p)?;
    if spaces.len() != r || spaces.iter().any(|s| s.basis.len() != 1) {
        return Err(Error::Internal(format!(
            "class matrices of {} did not split into {r} joint eigenvectors mod {p}",
            g.spec()
        )));
    }

    let root = primitive_root(p)?;
    let theta = pow_mod(root, (p - 1) / e, p);
    let inverse_class: Vec<usize> = (0..r).map(|c| cd.inverse_class(c)).collect();
    let sizes: Vec<u64> = cd.classes.iter().map(|c| c.size % p).collect();
    let max_degree = n.sqrt();

    let mut rows = Vec::with_capacity(r);
    for space in &spaces {
        let mut w = space.basis[0].clone();
        if w[0] == 0 {
            return Err(Error::Internal("central character vanishes at the identity".into()));
        }
        let scale = inv_mod(w[0], p);
        for x in w.iter_mut() {
            *x = mul_mod(*x, scale, p);
        }
        // χ(1)² = |G| / Σ ω_i ω_{i'} / |C_i|
        let mut s = 0u64;
        for i in 0..r {
            let t = mul_mod(mul_mod(w[i], w[inverse_class[i]], p), inv_mod(sizes[i], p), p);
            s = (s + t) % p;
        }
        if s == 0 {
            return Err(Error::Internal("degree normalizer vanishes mod p".into()));
        }
        let target = mul_mod(n % p, inv_mod(s, p), p);
        let degree = (1..=max_degree)
            .find(|&d| mul_mod(d, d, p) == target)
            .ok_or_else(|| Error::Internal(format!("no integer degree lifts {target} mod {p}")))?;
        let chi: Vec<u64> = (0..r)
            .map(|i| mul_mod(mul_mod(w[i], degree, p), inv_mod(sizes[i], p), p))
            .collect();
        let row = (0..r)
            .map(|i| lift_value(&cd, &chi, i, degree, theta, p))
            .collect::<Result<Vec<_>>>()?;
        rows.push(row);
    }
    CharacterTable::assemble(g.spec().clone(), cd, rows, Some(p), None)
}

/// Eigenvalue multiplicities of `g_i` from the values `χ(g_i^s) mod p`.
fn lift_value(
    cd: &ConjugacyData,
    chi: &[u64],
    class: usize,
    degree: u64,
    theta: u64,
    p: u64,
) -> Result<CyclotomicValue> {
    let e = cd.exponent;
    let o = cd.classes[class].element_order;
    let step = e / o;
    let theta_o = pow_mod(theta, step, p);
    let theta_o_inv = inv_mod(theta_o, p);
    let inv_o = inv_mod(o % p, p);
    let powers: Vec<u64> = (0..o).map(|s| chi[cd.power_class_map(class, s)]).collect();
    let mut terms = Vec::new();
    let mut total = 0;
    for t in 0..o {
        let base = pow_mod(theta_o_inv, t, p);
        let mut acc = 0u64;
        let mut w = 1u64;
        for &v in &powers {
            acc = (acc + mul_mod(v, w, p)) % p;
            w = mul_mod(w, base, p);
        }
        let m = mul_mod(acc, inv_o, p);
        if m > degree {
            return Err(Error::Internal(format!(
                "multiplicity {m} exceeds degree {degree} on class {class}"
            )));
        }
        total += m;
        terms.push((step * t, m));
    }
    if total != degree {
        return Err(Error::Internal(format!(
            "multiplicities on class {class} sum to {total}, not {degree}"
        )));
    }
    Ok(CyclotomicValue::from_terms(e, terms))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{construct_group, GroupOptions};

    fn group(s: &str) -> GroupModel {
        construct_group(&s.parse().unwrap(), &GroupOptions::default()).unwrap()
    }

    fn table(s: &str) -> CharacterTable {
        character_table(&group(s)).unwrap()
    }

    #[test]
    fn trivial_group_matrix() {
        let g = group("cyclic(1)");
        let cd = conjugacy_classes(&g).unwrap();
        assert_eq!(class_matrices(&g, &cd).unwrap(), vec![vec![vec![1]]]);
    }

    #[test]
    fn cyclic3_matrices_are_regular() {
        let g = group("cyclic(3)");
        let cd = conjugacy_classes(&g).unwrap();
        let m = class_matrices(&g, &cd).unwrap();
        // m[j][i][k] = 1 iff i + j = k mod 3
        for j in 0..3 {
            for i in 0..3 {
                for k in 0..3 {
                    assert_eq!(m[j][i][k], u64::from((i + j) % 3 == k));
                }
            }
        }
    }

    #[test]
    fn q8_class_products() {
        let g = group("q8");
        let cd = conjugacy_classes(&g).unwrap();
        let m = class_matrices(&g, &cd).unwrap();
        let class = |s: &str| {
            let q = crate::group::Q8Element::all()
                .into_iter()
                .find(|q| q.to_string() == s)
                .unwrap();
            cd.class_of(&crate::group::GroupElement::Quaternion(q)).unwrap()
        };
        let (one, minus, i) = (class("1"), class("-1"), class("i"));
        // {i,-i}·{i,-i} = {1, 1, -1, -1}
        assert_eq!(m[i][i][one], 2);
        assert_eq!(m[i][i][minus], 2);
        assert_eq!(m[i][i][i], 0);
    }

    #[test]
    fn primes() {
        assert_eq!(dixon_prime(3, 3).unwrap(), 7);
        assert_eq!(dixon_prime(420, 2520).unwrap(), 421);
        assert_eq!(dixon_prime(4, 8).unwrap(), 13);
        assert_eq!(dixon_prime(60, 60).unwrap(), 61);
        assert!(matches!(
            dixon_prime(10_000_000, 10),
            Err(Error::PrimeSearch { .. })
        ));
    }

    #[test]
    fn cyclic3_table() {
        let t = table("cyclic(3)");
        assert_eq!(t.prime, Some(7));
        assert_eq!(t.degrees, vec![1, 1, 1]);
        // each nontrivial row takes the values 1, ζ, ζ² in some order
        for row in &t.rows[1..] {
            let mut ks: Vec<u64> = row.iter().map(|v| v.terms()[0].0).collect();
            ks.sort();
            assert_eq!(ks, vec![0, 1, 2]);
        }
    }

    #[test]
    fn q8_table() {
        let t = table("q8");
        assert_eq!(t.degrees, vec![1, 1, 1, 1, 2]);
        let g = group("q8");
        let cd = &t.classes;
        for x in g.enumerate().unwrap().elements() {
            let c = cd.class_of(x).unwrap();
            let v = t.value(4, c).as_integer().unwrap();
            let expected = match x.to_string().as_str() {
                "1" => 2,
                "-1" => -2,
                _ => 0,
            };
            assert_eq!(v, expected, "{x}");
        }
    }

    #[test]
    fn alternating_degrees() {
        assert_eq!(table("alt(5)").degrees, vec![1, 3, 3, 4, 5]);
        let t = table("alt(7)");
        assert_eq!(t.prime, Some(421));
        assert_eq!(t.degrees, vec![1, 6, 10, 10, 14, 14, 15, 21, 35]);
        assert_eq!(table("sym(5)").degrees, vec![1, 1, 4, 4, 5, 5, 6]);
        assert_eq!(table("alt(6)").degrees, vec![1, 5, 5, 8, 8, 9, 10]);
    }
}
