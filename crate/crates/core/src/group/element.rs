use std::fmt;

use serde::{Deserialize, Serialize};

/// Imaginary unit part of a quaternion group element.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Unit {
    One,
    I,
    J,
    K,
}

/// An element `±1, ±i, ±j, ±k` of the quaternion group of order 8.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Q8Element {
    pub negative: bool,
    pub unit: Unit,
}

impl Q8Element {
    pub const ONE: Q8Element = Q8Element::new(false, Unit::One);
    pub const MINUS_ONE: Q8Element = Q8Element::new(true, Unit::One);
    pub const I: Q8Element = Q8Element::new(false, Unit::I);
    pub const J: Q8Element = Q8Element::new(false, Unit::J);
    pub const K: Q8Element = Q8Element::new(false, Unit::K);

    pub const fn new(negative: bool, unit: Unit) -> Self {
        Q8Element { negative, unit }
    }

    /// All eight elements in the deterministic element order.
    pub fn all() -> [Q8Element; 8] {
        let units = [Unit::One, Unit::I, Unit::J, Unit::K];
        let mut out = [Q8Element::ONE; 8];
        for (s, negative) in [false, true].into_iter().enumerate() {
            for (u, unit) in units.into_iter().enumerate() {
                out[4 * s + u] = Q8Element { negative, unit };
            }
        }
        out
    }

    pub fn inverse(self) -> Q8Element {
        match self.unit {
            Unit::One => self,
            _ => Q8Element {
                negative: !self.negative,
                unit: self.unit,
            },
        }
    }

    /// Signs by which this element acts on the three cyclic coordinates of a
    /// Milnor group: `i`, `j`, `k` fix the first, second, third coordinate
    /// respectively and invert the other two.
    pub fn action_signs(self) -> [bool; 3] {
        // true = invert
        match self.unit {
            Unit::One => [false, false, false],
            Unit::I => [false, true, true],
            Unit::J => [true, false, true],
            Unit::K => [true, true, false],
        }
    }
}

impl std::ops::Mul for Q8Element {
    type Output = Q8Element;

    fn mul(self, other: Q8Element) -> Q8Element {
        use Unit::*;
        let (flip, unit) = match (self.unit, other.unit) {
            (One, u) | (u, One) => (false, u),
            (I, I) | (J, J) | (K, K) => (true, One),
            (I, J) => (false, K),
            (J, I) => (true, K),
            (J, K) => (false, I),
            (K, J) => (true, I),
            (K, I) => (false, J),
            (I, K) => (true, J),
        };
        Q8Element {
            negative: self.negative ^ other.negative ^ flip,
            unit,
        }
    }
}

impl fmt::Display for Q8Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sign = if self.negative { "-" } else { "" };
        let u = match self.unit {
            Unit::One => "1",
            Unit::I => "i",
            Unit::J => "j",
            Unit::K => "k",
        };
        write!(f, "{sign}{u}")
    }
}

/// A permutation of `{0, ..., n-1}` stored as its image array.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Perm(pub Vec<u8>);

impl Perm {
    pub fn identity(n: usize) -> Self {
        Perm((0..n as u8).collect())
    }

    /// Permutation from 1-based cycles on `n` points.
    pub fn from_cycles(n: usize, cycles: &[&[usize]]) -> Self {
        let mut image: Vec<u8> = (0..n as u8).collect();
        for cycle in cycles {
            for (k, &x) in cycle.iter().enumerate() {
                let y = cycle[(k + 1) % cycle.len()];
                image[x - 1] = (y - 1) as u8;
            }
        }
        Perm(image)
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    /// Composition `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Perm) -> Perm {
        Perm(other.0.iter().map(|&x| self.0[x as usize]).collect())
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0u8; self.0.len()];
        for (i, &x) in self.0.iter().enumerate() {
            inv[x as usize] = i as u8;
        }
        Perm(inv)
    }

    pub fn is_even(&self) -> bool {
        let mut seen = vec![false; self.0.len()];
        let mut transpositions = 0;
        for start in 0..self.0.len() {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                x = self.0[x] as usize;
                len += 1;
            }
            transpositions += len - 1;
        }
        transpositions % 2 == 0
    }

    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.0.len()];
        let mut out = Vec::new();
        for start in 0..self.0.len() {
            if seen[start] || self.0[start] as usize == start {
                continue;
            }
            let mut cycle = Vec::new();
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                cycle.push(x);
                x = self.0[x] as usize;
            }
            out.push(cycle);
        }
        out
    }

    /// All permutations of degree `n` in lexicographic order of image arrays.
    pub fn all(n: usize) -> Vec<Perm> {
        let mut cur: Vec<u8> = (0..n as u8).collect();
        let mut out = vec![Perm(cur.clone())];
        while next_permutation(&mut cur) {
            out.push(Perm(cur.clone()));
        }
        out
    }
}

fn next_permutation(v: &mut [u8]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let Some(i) = (0..v.len() - 1).rev().find(|&i| v[i] < v[i + 1]) else {
        return false;
    };
    let j = (i + 1..v.len()).rev().find(|&j| v[j] > v[i]).expect("successor exists");
    v.swap(i, j);
    v[i + 1..].reverse();
    true
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for c in cycles {
            let items: Vec<String> = c.iter().map(|x| (x + 1).to_string()).collect();
            write!(f, "({})", items.join(" "))?;
        }
        Ok(())
    }
}

/// An element of one of the supported group models.
///
/// The derived ordering is lexicographic on the field tuple, which is the
/// deterministic element order used for enumeration and class representatives.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum GroupElement {
    Cyclic(u64),
    Quaternion(Q8Element),
    /// `(x mod a, y mod b, z mod c)` in the normal cyclic subgroup, then the quaternion part.
    Milnor { x: u64, y: u64, z: u64, q: Q8Element },
    Perm(Perm),
    Pair(Box<GroupElement>, Box<GroupElement>),
}

impl GroupElement {
    pub fn pair(left: GroupElement, right: GroupElement) -> Self {
        GroupElement::Pair(Box::new(left), Box::new(right))
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupElement::Cyclic(r) => write!(f, "{r}"),
            GroupElement::Quaternion(q) => write!(f, "{q}"),
            GroupElement::Milnor { x, y, z, q } => write!(f, "({x},{y},{z};{q})"),
            GroupElement::Perm(p) => write!(f, "{p}"),
            GroupElement::Pair(g, h) => write!(f, "[{g}, {h}]"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quaternion_relations() {
        let (i, j, k) = (Q8Element::I, Q8Element::J, Q8Element::K);
        assert_eq!(i * j, k);
        assert_eq!(j * k, i);
        assert_eq!(k * i, j);
        assert_eq!(i * i, Q8Element::MINUS_ONE);
        assert_eq!(j * i, k.inverse());
        for q in Q8Element::all() {
            assert_eq!(q * q.inverse(), Q8Element::ONE);
        }
    }

    #[test]
    fn quaternion_associativity() {
        let all = Q8Element::all();
        for a in all {
            for b in all {
                for c in all {
                    assert_eq!(a * b * c, a * (b * c));
                }
            }
        }
    }

    #[test]
    fn action_is_a_homomorphism_to_sign_changes() {
        let all = Q8Element::all();
        for a in all {
            for b in all {
                let ab = (a * b).action_signs();
                let (sa, sb) = (a.action_signs(), b.action_signs());
                for t in 0..3 {
                    assert_eq!(ab[t], sa[t] ^ sb[t]);
                }
            }
        }
    }

    #[test]
    fn permutations() {
        let p = Perm::from_cycles(4, &[&[1, 2, 3]]);
        assert_eq!(p.0, vec![1, 2, 0, 3]);
        assert!(p.is_even());
        assert!(!Perm::from_cycles(4, &[&[1, 2]]).is_even());
        assert_eq!(p.compose(&p.inverse()), Perm::identity(4));
        assert_eq!(p.to_string(), "(1 2 3)");
        assert_eq!(Perm::all(4).len(), 24);
        let all = Perm::all(4);
        assert!(all.windows(2).all(|w| w[0] < w[1]));
    }
}
