//! Linear algebra over GF(p) for word-sized primes.

use std::collections::HashMap;

use crate::error::{Error, Result};

/// Deterministic Miller-Rabin for all `u64`.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

#[inline]
pub fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, p);
        }
        base = mul_mod(base, base, p);
        exp >>= 1;
    }
    acc
}

/// Inverse of a nonzero residue modulo the prime `p`.
pub fn inv_mod(a: u64, p: u64) -> u64 {
    debug_assert!(!a.is_multiple_of(p));
    pow_mod(a, p - 2, p)
}

fn distinct_prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Smallest generator of the multiplicative group GF(p)*.
pub fn primitive_root(p: u64) -> Result<u64> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if p == 2 {
        return Ok(1);
    }
    let factors = distinct_prime_factors(p - 1);
    (2..p)
        .find(|&g| factors.iter().all(|&q| pow_mod(g, (p - 1) / q, p) != 1))
        .ok_or_else(|| Error::Internal(format!("no primitive root mod {p}")))
}

/// Multiplicative order of `x` in GF(p)*.
pub fn multiplicative_order(x: u64, p: u64) -> Option<u64> {
    let x = x % p;
    if x == 0 {
        return None;
    }
    let mut order = p - 1;
    for q in distinct_prime_factors(p - 1) {
        while order.is_multiple_of(q) && pow_mod(x, order / q, p) == 1 {
            order /= q;
        }
    }
    Some(order)
}

/// Map `theta^k mod p -> k` for `0 <= k < order`.
#[derive(Clone, Debug)]
pub struct DiscreteLogTable {
    modulus: u64,
    order: u64,
    logs: HashMap<u64, u64>,
}

impl DiscreteLogTable {
    pub fn get(&self, residue: u64) -> Option<u64> {
        self.logs.get(&(residue % self.modulus)).copied()
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn len(&self) -> usize {
        self.logs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.logs.is_empty()
    }
}

/// Table of discrete logarithms to base `theta`, which must have exact order `order` mod `p`.
pub fn discrete_log_table(theta: u64, order: u64, p: u64) -> Result<DiscreteLogTable> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if multiplicative_order(theta, p) != Some(order) {
        return Err(Error::Linalg(format!(
            "{theta} does not have multiplicative order {order} modulo {p}"
        )));
    }
    let mut logs = HashMap::with_capacity(order as usize);
    let mut x = 1 % p;
    for k in 0..order {
        logs.insert(x, k);
        x = mul_mod(x, theta, p);
    }
    Ok(DiscreteLogTable {
        modulus: p,
        order,
        logs,
    })
}

/// Dense row-major matrix over GF(p).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrimeFieldMatrix {
    modulus: u64,
    rows: usize,
    cols: usize,
    data: Vec<u64>,
}

impl PrimeFieldMatrix {
    pub fn zeros(p: u64, rows: usize, cols: usize) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(PrimeFieldMatrix {
            modulus: p,
            rows,
            cols,
            data: vec![0; rows * cols],
        })
    }

    pub fn identity(p: u64, n: usize) -> Result<Self> {
        let mut m = Self::zeros(p, n, n)?;
        for i in 0..n {
            m.data[i * n + i] = 1 % p;
        }
        Ok(m)
    }

    /// Builds from signed integer rows, reducing every entry into `[0, p)`.
    pub fn from_rows<R: AsRef<[i64]>>(p: u64, rows: &[R]) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.as_ref().len());
        let mut m = Self::zeros(p, rows.len(), cols)?;
        for (i, row) in rows.iter().enumerate() {
            let row = row.as_ref();
            if row.len() != cols {
                return Err(Error::Linalg(format!("row {i} has the wrong length")));
            }
            for (j, &v) in row.iter().enumerate() {
                m.data[i * cols + j] = v.rem_euclid(p as i64) as u64;
            }
        }
        Ok(m)
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: u64) {
        self.data[i * self.cols + j] = v % self.modulus;
    }

    pub fn mul(&self, other: &PrimeFieldMatrix) -> Result<PrimeFieldMatrix> {
        if self.cols != other.rows || self.modulus != other.modulus {
            return Err(Error::Linalg("incompatible matrices".into()));
        }
        let p = self.modulus;
        let mut out = PrimeFieldMatrix {
            modulus: p,
            rows: self.rows,
            cols: other.cols,
            data: vec![0; self.rows * other.cols],
        };
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let idx = i * other.cols + j;
                    out.data[idx] = (out.data[idx] + mul_mod(a, other.get(k, j), p)) % p;
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[u64]) -> Vec<u64> {
        let p = self.modulus;
        (0..self.rows)
            .map(|i| {
                (0..self.cols).fold(0u64, |acc, j| (acc + mul_mod(self.get(i, j), v[j], p)) % p)
            })
            .collect()
    }

    /// Reduced row echelon form in place; returns pivot columns.
    fn rref(&mut self) -> Vec<usize> {
        let p = self.modulus;
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(pr) = (r..self.rows).find(|&i| self.get(i, c) != 0) else {
                continue;
            };
            for j in 0..self.cols {
                self.data.swap(r * self.cols + j, pr * self.cols + j);
            }
            let inv = inv_mod(self.get(r, c), p);
            for j in c..self.cols {
                let v = mul_mod(self.get(r, j), inv, p);
                self.data[r * self.cols + j] = v;
            }
            for i in 0..self.rows {
                if i == r {
                    continue;
                }
                let f = self.get(i, c);
                if f == 0 {
                    continue;
                }
                for j in c..self.cols {
                    let sub = mul_mod(f, self.get(r, j), p);
                    let idx = i * self.cols + j;
                    self.data[idx] = (self.data[idx] + p - sub) % p;
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        self.clone().rref().len()
    }

    fn with_diagonal_shift(&self, lambda: u64) -> PrimeFieldMatrix {
        let mut m = self.clone();
        let p = self.modulus;
        for i in 0..self.rows.min(self.cols) {
            let idx = i * self.cols + i;
            m.data[idx] = (m.data[idx] + p - lambda % p) % p;
        }
        m
    }
}

/// Scales a nonzero vector so its first nonzero entry is 1.
pub fn normalize_projective(v: &mut [u64], p: u64) {
    if let Some(&lead) = v.iter().find(|&&x| x != 0) {
        let inv = inv_mod(lead, p);
        for x in v.iter_mut() {
            *x = mul_mod(*x, inv, p);
        }
    }
}

/// Basis of the right nullspace `{v : M v = 0}`, one vector per free column,
/// each projectively normalized. Its size is `cols - rank(M)`.
pub fn pf_nullspace(m: &PrimeFieldMatrix) -> Vec<Vec<u64>> {
    let p = m.modulus;
    let mut r = m.clone();
    let pivots = r.rref();
    let mut basis = Vec::new();
    let mut pivot_iter = pivots.iter().peekable();
    let mut free = Vec::new();
    for c in 0..m.cols {
        if pivot_iter.peek() == Some(&&c) {
            pivot_iter.next();
        } else {
            free.push(c);
        }
    }
    for &f in &free {
        let mut v = vec![0u64; m.cols];
        v[f] = 1 % p;
        for (row, &pc) in pivots.iter().enumerate() {
            v[pc] = (p - r.get(row, f)) % p;
        }
        normalize_projective(&mut v, p);
        basis.push(v);
    }
    basis
}

/// A common eigenspace of a family of commuting matrices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EigenSpace {
    /// Eigenvalue of each input matrix on this space, in input order.
    pub eigenvalues: Vec<u64>,
    /// Basis vectors (columns), projectively normalized.
    pub basis: Vec<Vec<u64>>,
}

/// Simultaneous eigenspace decomposition of pairwise commuting matrices.
///
/// Spaces are refined matrix by matrix in input order, and eigenvalues are
/// tried in increasing residue order, so the output order is deterministic.
/// Every returned space is a joint eigenspace; when the family separates the
/// space completely all of them are one-dimensional.
pub fn pf_simultaneous_eigenbasis(ms: &[PrimeFieldMatrix], p: u64) -> Result<Vec<EigenSpace>> {
    for (i, a) in ms.iter().enumerate() {
        if a.modulus != p {
            return Err(Error::Linalg(format!("matrix {i} is not over GF({p})")));
        }
        if a.rows != a.cols || a.rows != ms[0].rows {
            return Err(Error::Linalg(format!("matrix {i} has the wrong shape")));
        }
    }
    for i in 0..ms.len() {
        for j in i + 1..ms.len() {
            if ms[i].mul(&ms[j])? != ms[j].mul(&ms[i])? {
                return Err(Error::NonCommuting(i, j));
            }
        }
    }
    split_common_eigenspaces(ms, p)
}

/// Splitting without the pairwise commutation check; callers vouch for commutativity.
pub(crate) fn split_common_eigenspaces(
    ms: &[PrimeFieldMatrix],
    p: u64,
) -> Result<Vec<EigenSpace>> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let Some(first) = ms.first() else {
        return Ok(Vec::new());
    };
    let n = first.rows;
    let start = EigenSpace {
        eigenvalues: Vec::new(),
        basis: (0..n)
            .map(|i| {
                let mut v = vec![0; n];
                v[i] = 1 % p;
                v
            })
            .collect(),
    };
    let mut spaces = vec![start];
    for (idx, a) in ms.iter().enumerate() {
        let mut next = Vec::with_capacity(spaces.len());
        for space in spaces {
            next.extend(split_space(a, idx, space, p)?);
        }
        spaces = next;
    }
    Ok(spaces)
}

fn split_space(a: &PrimeFieldMatrix, idx: usize, space: EigenSpace, p: u64) -> Result<Vec<EigenSpace>> {
    let d = space.basis.len();
    if d == 1 {
        let v = &space.basis[0];
        let av = a.mul_vec(v);
        let lead = v.iter().position(|&x| x != 0).expect("nonzero basis vector");
        let lambda = mul_mod(av[lead], inv_mod(v[lead], p), p);
        if av.iter().zip(v).any(|(&x, &y)| x != mul_mod(lambda, y, p)) {
            return Err(Error::Linalg(format!(
                "matrix {idx} does not preserve a joint eigenspace; input is not commuting"
            )));
        }
        let mut eigenvalues = space.eigenvalues;
        eigenvalues.push(lambda);
        return Ok(vec![EigenSpace {
            eigenvalues,
            basis: space.basis,
        }]);
    }

    let restricted = restrict(a, &space.basis, p)?;
    let mut out = Vec::new();
    let mut found = 0;
    for lambda in 0..p {
        let null = pf_nullspace(&restricted.with_diagonal_shift(lambda));
        if null.is_empty() {
            continue;
        }
        found += null.len();
        let mut basis: Vec<Vec<u64>> = null
            .iter()
            .map(|coords| combine(&space.basis, coords, p))
            .collect();
        if basis.len() > 1 {
            basis = echelon_basis(basis, p);
        } else {
            normalize_projective(&mut basis[0], p);
        }
        let mut eigenvalues = space.eigenvalues.clone();
        eigenvalues.push(lambda);
        out.push(EigenSpace { eigenvalues, basis });
        if found == d {
            return Ok(out);
        }
    }
    Err(Error::Linalg(format!(
        "matrix {idx} is not diagonalizable over GF({p}) on a {d}-dimensional joint eigenspace"
    )))
}

/// Matrix of `a` restricted to the invariant subspace spanned by `basis`, in those coordinates.
fn restrict(a: &PrimeFieldMatrix, basis: &[Vec<u64>], p: u64) -> Result<PrimeFieldMatrix> {
    let d = basis.len();
    let n = a.rows;
    // B as n x d, find d independent rows R, then C = B_R^{-1} (A B)_R
    let mut b = PrimeFieldMatrix::zeros(p, n, d)?;
    for (j, v) in basis.iter().enumerate() {
        for i in 0..n {
            b.data[i * d + j] = v[i];
        }
    }
    let ab = a.mul(&b)?;
    let pivot_rows = b.transpose().rref();
    if pivot_rows.len() != d {
        return Err(Error::Linalg("eigenspace basis is not independent".into()));
    }
    // augmented [B_R | (AB)_R], reduce to [I | C]
    let mut aug = PrimeFieldMatrix::zeros(p, d, 2 * d)?;
    for (k, &r) in pivot_rows.iter().enumerate() {
        for j in 0..d {
            aug.data[k * 2 * d + j] = b.get(r, j);
            aug.data[k * 2 * d + d + j] = ab.get(r, j);
        }
    }
    aug.rref();
    let mut c = PrimeFieldMatrix::zeros(p, d, d)?;
    for i in 0..d {
        for j in 0..d {
            c.data[i * d + j] = aug.get(i, d + j);
        }
    }
    Ok(c)
}

impl PrimeFieldMatrix {
    fn transpose(&self) -> PrimeFieldMatrix {
        let mut t = PrimeFieldMatrix {
            modulus: self.modulus,
            rows: self.cols,
            cols: self.rows,
            data: vec![0; self.data.len()],
        };
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.data[j * self.rows + i] = self.get(i, j);
            }
        }
        t
    }
}

fn combine(basis: &[Vec<u64>], coords: &[u64], p: u64) -> Vec<u64> {
    let n = basis[0].len();
    let mut v = vec![0u64; n];
    for (b, &c) in basis.iter().zip(coords) {
        if c == 0 {
            continue;
        }
        for i in 0..n {
            v[i] = (v[i] + mul_mod(c, b[i], p)) % p;
        }
    }
    v
}

/// Canonical basis of a span: rows of the reduced echelon form.
fn echelon_basis(vectors: Vec<Vec<u64>>, p: u64) -> Vec<Vec<u64>> {
    let n = vectors[0].len();
    let mut m = PrimeFieldMatrix {
        modulus: p,
        rows: vectors.len(),
        cols: n,
        data: vectors.concat(),
    };
    let rank = m.rref().len();
    (0..rank)
        .map(|i| (0..n).map(|j| m.get(i, j)).collect())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primality() {
        let primes: Vec<u64> = (0..60).filter(|&n| is_prime(n)).collect();
        assert_eq!(
            primes,
            vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59]
        );
        assert!(is_prime(421));
        assert!(!is_prime(421 * 421));
        assert!(is_prime(2_305_843_009_213_693_951));
    }

    #[test]
    fn non_prime_modulus_rejected() {
        assert!(matches!(
            PrimeFieldMatrix::zeros(8, 2, 2),
            Err(Error::NotPrime(8))
        ));
    }

    #[test]
    fn nullspace_examples() {
        let z = PrimeFieldMatrix::zeros(7, 3, 3).unwrap();
        assert_eq!(pf_nullspace(&z).len(), 3);
        let id = PrimeFieldMatrix::identity(7, 3).unwrap();
        assert!(pf_nullspace(&id).is_empty());
        // oracle: enumerate all 25 vectors of GF(5)^2
        let m = PrimeFieldMatrix::from_rows(5, &[[1, 1], [1, 1]]).unwrap();
        let kernel: Vec<(u64, u64)> = (0..5)
            .flat_map(|a| (0..5).map(move |b| (a, b)))
            .filter(|&(a, b)| (a + b) % 5 == 0)
            .collect();
        assert_eq!(kernel.len(), 5);
        assert_eq!(pf_nullspace(&m), vec![vec![1, 4]]);
    }

    #[test]
    fn eigenbasis_of_swap() {
        let swap = PrimeFieldMatrix::from_rows(7, &[[0, 1], [1, 0]]).unwrap();
        let spaces = pf_simultaneous_eigenbasis(&[swap], 7).unwrap();
        let vecs: Vec<_> = spaces.iter().map(|s| s.basis.clone()).collect();
        assert_eq!(vecs, vec![vec![vec![1, 1]], vec![vec![1, 6]]]);
        assert_eq!(spaces[0].eigenvalues, vec![1]);
        assert_eq!(spaces[1].eigenvalues, vec![6]);
    }

    #[test]
    fn eigenbasis_of_identity_is_unsplit() {
        let id = PrimeFieldMatrix::identity(7, 2).unwrap();
        let spaces = pf_simultaneous_eigenbasis(&[id], 7).unwrap();
        assert_eq!(spaces.len(), 1);
        assert_eq!(spaces[0].basis.len(), 2);
    }

    #[test]
    fn non_commuting_rejected() {
        let a = PrimeFieldMatrix::from_rows(7, &[[1, 1], [0, 1]]).unwrap();
        let b = PrimeFieldMatrix::from_rows(7, &[[1, 0], [1, 1]]).unwrap();
        assert!(matches!(
            pf_simultaneous_eigenbasis(&[a, b], 7),
            Err(Error::NonCommuting(0, 1))
        ));
    }

    #[test]
    fn non_diagonalizable_rejected() {
        let jordan = PrimeFieldMatrix::from_rows(7, &[[1, 1], [0, 1]]).unwrap();
        assert!(pf_simultaneous_eigenbasis(&[jordan], 7).is_err());
    }

    #[test]
    fn discrete_logs() {
        let t = discrete_log_table(2, 3, 7).unwrap();
        assert_eq!(t.len(), 3);
        assert_eq!((t.get(1), t.get(2), t.get(4)), (Some(0), Some(1), Some(2)));
        assert_eq!(t.get(3), None);
        let t = discrete_log_table(12, 2, 13).unwrap();
        assert_eq!((t.get(1), t.get(12)), (Some(0), Some(1)));
        let t = discrete_log_table(1, 1, 13).unwrap();
        assert_eq!(t.get(1), Some(0));
        assert!(discrete_log_table(2, 2, 7).is_err());
    }

    #[test]
    fn primitive_roots() {
        assert_eq!(primitive_root(7).unwrap(), 3);
        assert_eq!(primitive_root(421).unwrap(), 2);
        assert_eq!(multiplicative_order(2, 421), Some(420));
    }
}
