use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use num_integer::Integer;
use serde::{Deserialize, Serialize};

/// `Σ m_k ζ_e^k` with nonnegative multiplicities `m_k`.
///
/// When the value comes from a character, `m_k` is the multiplicity of the
/// eigenvalue `ζ_e^k`, so the raw vector carries more information than the
/// complex number it denotes. Equality of the denoted numbers goes through
/// [`CyclotomicValue::canonical`].
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CyclotomicValue {
    order: u64,
    /// `(k, m_k)` with `m_k > 0`, sorted by `k < order`.
    terms: Vec<(u64, u64)>,
}

impl CyclotomicValue {
    pub fn from_multiplicities(order: u64, multiplicities: &[u64]) -> Self {
        assert!(order >= 1);
        assert!(multiplicities.len() as u64 <= order);
        let terms = multiplicities
            .iter()
            .enumerate()
            .filter(|(_, &m)| m > 0)
            .map(|(k, &m)| (k as u64, m))
            .collect();
        CyclotomicValue { order, terms }
    }

    /// Builds from arbitrary `(exponent, multiplicity)` pairs; exponents are taken mod `order`.
    pub fn from_terms(order: u64, terms: impl IntoIterator<Item = (u64, u64)>) -> Self {
        let mut acc: HashMap<u64, u64> = HashMap::new();
        for (k, m) in terms {
            if m > 0 {
                *acc.entry(k % order).or_insert(0) += m;
            }
        }
        let mut terms: Vec<(u64, u64)> = acc.into_iter().collect();
        terms.sort_unstable();
        CyclotomicValue { order, terms }
    }

    /// The nonnegative integer `n` (as `n` copies of eigenvalue 1).
    pub fn integer(n: u64) -> Self {
        CyclotomicValue::from_multiplicities(1, &[n])
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn terms(&self) -> &[(u64, u64)] {
        &self.terms
    }

    pub fn multiplicity(&self, k: u64) -> u64 {
        self.terms
            .binary_search_by_key(&(k % self.order), |t| t.0)
            .map(|i| self.terms[i].1)
            .unwrap_or(0)
    }

    pub fn multiplicities(&self) -> Vec<u64> {
        let mut v = vec![0; self.order as usize];
        for &(k, m) in &self.terms {
            v[k as usize] = m;
        }
        v
    }

    /// `Σ m_k`, the degree of the character this value belongs to.
    pub fn total(&self) -> u64 {
        self.terms.iter().map(|t| t.1).sum()
    }

    /// True when every eigenvalue is 1, i.e. the element is in the kernel.
    pub fn is_kernel_value(&self) -> bool {
        self.terms.iter().all(|&(k, _)| k == 0)
    }

    pub fn conjugate(&self) -> Self {
        CyclotomicValue::from_terms(
            self.order,
            self.terms.iter().map(|&(k, m)| ((self.order - k) % self.order, m)),
        )
    }

    /// Same value written in order `order`, a multiple of the current one.
    pub fn lift(&self, order: u64) -> Self {
        assert!(order.is_multiple_of(self.order), "{order} is not a multiple of {}", self.order);
        let scale = order / self.order;
        CyclotomicValue {
            order,
            terms: self.terms.iter().map(|&(k, m)| (k * scale, m)).collect(),
        }
    }

    /// Eigenvalue multiset of a tensor product: convolution in order `lcm`.
    pub fn tensor(&self, other: &Self) -> Self {
        let order = self.order.lcm(&other.order);
        let (a, b) = (self.lift(order), other.lift(order));
        CyclotomicValue::from_terms(
            order,
            a.terms
                .iter()
                .flat_map(|&(i, m)| b.terms.iter().map(move |&(j, n)| (i + j, m * n))),
        )
    }

    /// Integer coefficients of the reduction modulo `Φ_order` in the power basis
    /// `1, ζ, ..., ζ^{φ-1}`.
    pub fn canonical(&self) -> Vec<i64> {
        let table = reduction_table(self.order);
        let mut acc = vec![0i128; table.phi];
        for &(k, m) in &self.terms {
            for (a, &c) in acc.iter_mut().zip(&table.powers[k as usize]) {
                *a += m as i128 * c as i128;
            }
        }
        acc.into_iter()
            .map(|x| i64::try_from(x).expect("cyclotomic coefficient overflow"))
            .collect()
    }

    /// Canonical coefficients after lifting to `order`.
    pub fn canonical_in(&self, order: u64) -> Vec<i64> {
        self.lift(order).canonical()
    }

    /// The rational integer this value equals, if any.
    pub fn as_integer(&self) -> Option<i64> {
        let c = self.canonical();
        c[1..].iter().all(|&x| x == 0).then_some(c[0])
    }

    /// Equality of the denoted complex numbers.
    pub fn value_eq(&self, other: &Self) -> bool {
        let order = self.order.lcm(&other.order);
        self.canonical_in(order) == other.canonical_in(order)
    }

    /// Image in GF(p) under `ζ_e ↦ theta`.
    pub fn evaluate_mod(&self, theta: u64, p: u64) -> u64 {
        let mul = |a: u64, b: u64| ((a as u128 * b as u128) % p as u128) as u64;
        let mut pow = 1u64;
        let mut k_prev = 0u64;
        let mut acc = 0u64;
        for &(k, m) in &self.terms {
            for _ in k_prev..k {
                pow = mul(pow, theta);
            }
            k_prev = k;
            acc = (acc + mul(m % p, pow)) % p;
        }
        acc
    }

    /// Floating-point approximation, for display only.
    pub fn to_complex(&self) -> (f64, f64) {
        let e = self.order as f64;
        self.terms.iter().fold((0.0, 0.0), |(re, im), &(k, m)| {
            let t = std::f64::consts::TAU * k as f64 / e;
            (re + m as f64 * t.cos(), im + m as f64 * t.sin())
        })
    }
}

/// Reduced power-basis rendering, e.g. `-1`, `2`, `z5 + z5^4`, `1 - 2*z3`.
impl fmt::Display for CyclotomicValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = self.canonical();
        let mut out = String::new();
        for (k, &x) in c.iter().enumerate() {
            if x == 0 {
                continue;
            }
            let sign = if x < 0 { "-" } else { "+" };
            let mag = x.unsigned_abs();
            let monomial = match k {
                0 => String::new(),
                1 => format!("z{}", self.order),
                _ => format!("z{}^{k}", self.order),
            };
            let body = match (k, mag) {
                (0, _) => mag.to_string(),
                (_, 1) => monomial,
                _ => format!("{mag}*{monomial}"),
            };
            if out.is_empty() {
                if x < 0 {
                    out.push('-');
                }
            } else {
                out.push_str(&format!(" {sign} "));
            }
            out.push_str(&body);
        }
        if out.is_empty() {
            out.push('0');
        }
        f.write_str(&out)
    }
}

struct ReductionTable {
    phi: usize,
    // powers[k] = coefficients of x^k mod Φ_e, 0 <= k < e
    powers: Vec<Vec<i64>>,
}

fn reduction_table(order: u64) -> Arc<ReductionTable> {
    static CACHE: OnceLock<Mutex<HashMap<u64, Arc<ReductionTable>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(t) = cache.lock().expect("cache poisoned").get(&order) {
        return t.clone();
    }
    let table = Arc::new(build_reduction_table(order));
    cache
        .lock()
        .expect("cache poisoned")
        .entry(order)
        .or_insert(table)
        .clone()
}

fn build_reduction_table(order: u64) -> ReductionTable {
    let phi_poly = cyclotomic_polynomial(order);
    let phi = phi_poly.len() - 1;
    let mut powers = Vec::with_capacity(order as usize);
    let mut cur = vec![0i64; phi];
    cur[0] = 1;
    for _ in 0..order {
        powers.push(cur.clone());
        // multiply by x and reduce with the monic Φ
        let top = cur[phi - 1];
        for i in (1..phi).rev() {
            cur[i] = cur[i - 1];
        }
        cur[0] = 0;
        if top != 0 {
            for i in 0..phi {
                cur[i] -= top * phi_poly[i];
            }
        }
    }
    ReductionTable { phi, powers }
}

/// Coefficients (low degree first) of the `n`-th cyclotomic polynomial.
///
/// `Φ_n = (x^n - 1) / Π_{d | n, d < n} Φ_d`; all divisions are by monic
/// integer polynomials, so the computation stays in the integers.
pub fn cyclotomic_polynomial(n: u64) -> Vec<i64> {
    assert!(n >= 1);
    let mut num = vec![0i64; n as usize + 1];
    num[0] = -1;
    num[n as usize] = 1;
    for d in 1..n {
        if n.is_multiple_of(d) {
            num = divide_monic(&num, &cyclotomic_polynomial(d));
        }
    }
    num
}

fn divide_monic(num: &[i64], den: &[i64]) -> Vec<i64> {
    let mut rem = num.to_vec();
    let dn = den.len() - 1;
    let qn = num.len() - 1 - dn;
    let mut q = vec![0i64; qn + 1];
    for i in (0..=qn).rev() {
        let c = rem[i + dn];
        q[i] = c;
        for j in 0..=dn {
            rem[i + j] -= c * den[j];
        }
    }
    debug_assert!(rem.iter().all(|&x| x == 0), "inexact division");
    q
}

/// Dense accumulator for exact sums of roots of unity with signed integer weights.
pub(crate) struct GroupRingSum {
    order: u64,
    acc: Vec<i128>,
}

impl GroupRingSum {
    pub(crate) fn new(order: u64) -> Self {
        GroupRingSum {
            order,
            acc: vec![0; order as usize],
        }
    }

    /// Adds `weight · a · conj(b)` (or `a · b` when `conjugate_b` is false); both in the accumulator's order.
    pub(crate) fn add_product(
        &mut self,
        weight: i128,
        a: &CyclotomicValue,
        b: &CyclotomicValue,
        conjugate_b: bool,
    ) {
        debug_assert!(self.order.is_multiple_of(a.order) && self.order.is_multiple_of(b.order));
        let (sa, sb) = (self.order / a.order, self.order / b.order);
        for &(i, m) in &a.terms {
            for &(j, n) in &b.terms {
                let (i, j) = (i * sa, j * sb);
                let k = if conjugate_b {
                    (i + self.order - j) % self.order
                } else {
                    (i + j) % self.order
                };
                self.acc[k as usize] += weight * m as i128 * n as i128;
            }
        }
    }

    pub(crate) fn add(&mut self, weight: i128, a: &CyclotomicValue) {
        let s = self.order / a.order;
        for &(k, m) in &a.terms {
            self.acc[(k * s) as usize] += weight * m as i128;
        }
    }

    /// The sum as a rational integer, or `None` if it is not one.
    pub(crate) fn as_integer(&self) -> Option<i128> {
        let table = reduction_table(self.order);
        let mut red = vec![0i128; table.phi];
        for (k, &w) in self.acc.iter().enumerate() {
            if w == 0 {
                continue;
            }
            for (r, &c) in red.iter_mut().zip(&table.powers[k]) {
                *r += w * c as i128;
            }
        }
        red[1..].iter().all(|&x| x == 0).then_some(red[0])
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_cyclotomic_polynomials() {
        assert_eq!(cyclotomic_polynomial(1), vec![-1, 1]);
        assert_eq!(cyclotomic_polynomial(2), vec![1, 1]);
        assert_eq!(cyclotomic_polynomial(4), vec![1, 0, 1]);
        assert_eq!(cyclotomic_polynomial(6), vec![1, -1, 1]);
        assert_eq!(cyclotomic_polynomial(12), vec![1, 0, -1, 0, 1]);
        assert_eq!(cyclotomic_polynomial(420).len() - 1, 96);
        // Φ_105 is the first with a coefficient of absolute value 2
        assert!(cyclotomic_polynomial(105).contains(&-2));
    }

    #[test]
    fn sum_of_all_roots_vanishes() {
        for e in [2u64, 3, 5, 12, 60, 420] {
            let v = CyclotomicValue::from_multiplicities(e, &vec![1; e as usize]);
            assert_eq!(v.as_integer(), Some(0), "order {e}");
        }
    }

    #[test]
    fn primitive_roots_of_unity_sum_to_mobius() {
        // Σ primitive n-th roots = μ(n)
        for (n, mu) in [(1u64, 1i64), (2, -1), (3, -1), (4, 0), (6, 1), (30, -1), (36, 0)] {
            let v = CyclotomicValue::from_terms(
                n,
                (0..n).filter(|k| k.gcd(&n) == 1).map(|k| (k, 1)),
            );
            assert_eq!(v.as_integer(), Some(mu), "n = {n}");
        }
    }

    #[test]
    fn lift_and_tensor() {
        let z3 = CyclotomicValue::from_multiplicities(3, &[0, 1]);
        let z4 = CyclotomicValue::from_multiplicities(4, &[0, 1]);
        let t = z3.tensor(&z4);
        assert_eq!(t.order(), 12);
        assert_eq!(t.terms(), &[(7, 1)]);
        assert!(z3.value_eq(&z3.lift(6)));
        assert!(!z3.value_eq(&z3.conjugate()));
        // -1 written as ζ_2 equals ζ_4^2
        let m1 = CyclotomicValue::from_multiplicities(2, &[0, 1]);
        assert!(m1.value_eq(&CyclotomicValue::from_terms(4, [(2, 1)])));
        assert_eq!(m1.as_integer(), Some(-1));
    }

    #[test]
    fn kernel_test_uses_raw_multiplicities() {
        assert!(CyclotomicValue::integer(3).is_kernel_value());
        // ζ_2 + ζ_2 + 1 + 1 + 1 + 1 = 2 is a value but not a kernel value for degree 6
        let v = CyclotomicValue::from_multiplicities(2, &[4, 2]);
        assert_eq!(v.as_integer(), Some(2));
        assert!(!v.is_kernel_value());
    }

    #[test]
    fn display() {
        assert_eq!(CyclotomicValue::integer(2).to_string(), "2");
        assert_eq!(CyclotomicValue::from_multiplicities(2, &[0, 2]).to_string(), "-2");
        assert_eq!(CyclotomicValue::from_multiplicities(3, &[0, 0, 1]).to_string(), "-1 - z3");
        assert_eq!(CyclotomicValue::from_multiplicities(5, &[0, 1]).to_string(), "z5");
        assert_eq!(CyclotomicValue::from_multiplicities(4, &[0, 0, 0, 0]).to_string(), "0");
    }

    #[test]
    fn evaluation_mod_p() {
        // θ = 2 has order 3 mod 7
        let v = CyclotomicValue::from_multiplicities(3, &[1, 1, 1]);
        assert_eq!(v.evaluate_mod(2, 7), 0);
        let v = CyclotomicValue::from_multiplicities(3, &[0, 2, 1]);
        assert_eq!(v.evaluate_mod(2, 7), (2 * 2 + 4) % 7);
    }
}
