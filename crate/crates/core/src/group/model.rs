use std::collections::{HashMap, HashSet, VecDeque};
use std::sync::{Arc, OnceLock};

use num_integer::Integer;

use super::element::{GroupElement, Perm, Q8Element};
use super::spec::GroupSpec;
use crate::error::{Error, Result};

pub const DEFAULT_ENUMERATION_BOUND: u64 = 1_000_000;

#[derive(Clone, Debug)]
pub struct GroupOptions {
    /// Accept Milnor parameters outside the standing hypotheses (only positivity is checked).
    pub allow_nonstandard: bool,
    /// Largest order for which elements may be listed explicitly.
    pub enumeration_bound: u64,
}

impl Default for GroupOptions {
    fn default() -> Self {
        GroupOptions {
            allow_nonstandard: false,
            enumeration_bound: DEFAULT_ENUMERATION_BOUND,
        }
    }
}

#[derive(Debug)]
enum Law {
    Cyclic(u64),
    Quaternion,
    Milnor([u64; 3]),
    Perm(usize),
    Product(Arc<GroupModel>, Arc<GroupModel>),
}

/// All elements of a group in the deterministic order, with reverse lookup.
#[derive(Debug)]
pub struct ElementIndex {
    elements: Vec<GroupElement>,
    lookup: HashMap<GroupElement, usize>,
}

impl ElementIndex {
    fn new(elements: Vec<GroupElement>) -> Self {
        let lookup = elements
            .iter()
            .enumerate()
            .map(|(i, g)| (g.clone(), i))
            .collect();
        ElementIndex { elements, lookup }
    }

    pub fn elements(&self) -> &[GroupElement] {
        &self.elements
    }

    pub fn index_of(&self, g: &GroupElement) -> Option<usize> {
        self.lookup.get(g).copied()
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }
}

/// A concrete finite group: multiplication rule, generators and cached elements.
#[derive(Debug)]
pub struct GroupModel {
    spec: GroupSpec,
    law: Law,
    order: u64,
    identity: GroupElement,
    generators: Vec<GroupElement>,
    enumeration_bound: u64,
    elements: OnceLock<Arc<ElementIndex>>,
}

/// Builds the group described by `spec` after validating its parameters.
pub fn construct_group(spec: &GroupSpec, options: &GroupOptions) -> Result<GroupModel> {
    spec.validate(options.allow_nonstandard)?;
    build(spec, options)
}

fn build(spec: &GroupSpec, options: &GroupOptions) -> Result<GroupModel> {
    let order = spec
        .order()
        .ok_or_else(|| Error::InvalidParameters(format!("order of {spec} overflows u64")))?;
    let (law, identity, generators) = match spec {
        GroupSpec::Cyclic(k) => {
            let gens = if *k > 1 { vec![GroupElement::Cyclic(1)] } else { vec![] };
            (Law::Cyclic(*k), GroupElement::Cyclic(0), gens)
        }
        GroupSpec::Q8 => (
            Law::Quaternion,
            GroupElement::Quaternion(Q8Element::ONE),
            vec![
                GroupElement::Quaternion(Q8Element::I),
                GroupElement::Quaternion(Q8Element::J),
            ],
        ),
        GroupSpec::Milnor { a, b, c } => {
            let m = |x, y, z, q| GroupElement::Milnor { x, y, z, q };
            let mut gens = Vec::new();
            if *a > 1 {
                gens.push(m(1, 0, 0, Q8Element::ONE));
            }
            if *b > 1 {
                gens.push(m(0, 1, 0, Q8Element::ONE));
            }
            if *c > 1 {
                gens.push(m(0, 0, 1, Q8Element::ONE));
            }
            gens.push(m(0, 0, 0, Q8Element::I));
            gens.push(m(0, 0, 0, Q8Element::J));
            (Law::Milnor([*a, *b, *c]), m(0, 0, 0, Q8Element::ONE), gens)
        }
        GroupSpec::Alternating(n) => {
            let n = *n;
            let mut gens = Vec::new();
            if n >= 3 {
                gens.push(Perm::from_cycles(n, &[&[1, 2, 3]]));
                let long: Vec<usize> = if n % 2 == 1 {
                    (1..=n).collect()
                } else {
                    (2..=n).collect()
                };
                gens.push(Perm::from_cycles(n, &[&long]));
            }
            gens.dedup();
            (
                Law::Perm(n),
                GroupElement::Perm(Perm::identity(n)),
                gens.into_iter().map(GroupElement::Perm).collect(),
            )
        }
        GroupSpec::Symmetric(n) => {
            let n = *n;
            let mut gens = Vec::new();
            if n >= 2 {
                gens.push(Perm::from_cycles(n, &[&[1, 2]]));
                let long: Vec<usize> = (1..=n).collect();
                gens.push(Perm::from_cycles(n, &[&long]));
            }
            gens.dedup();
            (
                Law::Perm(n),
                GroupElement::Perm(Perm::identity(n)),
                gens.into_iter().map(GroupElement::Perm).collect(),
            )
        }
        GroupSpec::Product(g, h) => {
            let g = build(g, options)?;
            let h = build(h, options)?;
            return Ok(product_group(Arc::new(g), Arc::new(h)));
        }
    };
    Ok(GroupModel {
        spec: spec.clone(),
        law,
        order,
        identity,
        generators,
        enumeration_bound: options.enumeration_bound,
        elements: OnceLock::new(),
    })
}

/// Direct product with componentwise operations. Elements are only listed on demand.
pub fn product_group(g: Arc<GroupModel>, h: Arc<GroupModel>) -> GroupModel {
    let spec = GroupSpec::product(g.spec.clone(), h.spec.clone());
    let order = g.order.saturating_mul(h.order);
    let identity = GroupElement::pair(g.identity.clone(), h.identity.clone());
    let generators = g
        .generators
        .iter()
        .map(|x| GroupElement::pair(x.clone(), h.identity.clone()))
        .chain(
            h.generators
                .iter()
                .map(|y| GroupElement::pair(g.identity.clone(), y.clone())),
        )
        .collect();
    let enumeration_bound = g.enumeration_bound.min(h.enumeration_bound);
    GroupModel {
        spec,
        law: Law::Product(g, h),
        order,
        identity,
        generators,
        enumeration_bound,
        elements: OnceLock::new(),
    }
}

impl GroupModel {
    pub fn spec(&self) -> &GroupSpec {
        &self.spec
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn identity(&self) -> &GroupElement {
        &self.identity
    }

    pub fn generators(&self) -> &[GroupElement] {
        &self.generators
    }

    pub fn enumeration_bound(&self) -> u64 {
        self.enumeration_bound
    }

    /// The two factors of a direct product.
    pub fn factors(&self) -> Option<(&Arc<GroupModel>, &Arc<GroupModel>)> {
        match &self.law {
            Law::Product(g, h) => Some((g, h)),
            _ => None,
        }
    }

    pub fn is_enumerable(&self) -> bool {
        self.order <= self.enumeration_bound
    }

    pub fn multiply(&self, a: &GroupElement, b: &GroupElement) -> GroupElement {
        use GroupElement as E;
        match (&self.law, a, b) {
            (Law::Cyclic(k), E::Cyclic(x), E::Cyclic(y)) => E::Cyclic((x + y) % k),
            (Law::Quaternion, E::Quaternion(p), E::Quaternion(q)) => E::Quaternion(*p * *q),
            (
                Law::Milnor(moduli),
                E::Milnor {
                    x: x1,
                    y: y1,
                    z: z1,
                    q: q1,
                },
                E::Milnor {
                    x: x2,
                    y: y2,
                    z: z2,
                    q: q2,
                },
            ) => {
                // (v1, q1)(v2, q2) = (v1 + q1·v2, q1 q2)
                let signs = q1.action_signs();
                let v1 = [*x1, *y1, *z1];
                let v2 = [*x2, *y2, *z2];
                let mut v = [0u64; 3];
                for t in 0..3 {
                    let m = moduli[t];
                    let acted = if signs[t] { (m - v2[t] % m) % m } else { v2[t] };
                    v[t] = (v1[t] + acted) % m;
                }
                E::Milnor {
                    x: v[0],
                    y: v[1],
                    z: v[2],
                    q: *q1 * *q2,
                }
            }
            (Law::Perm(_), E::Perm(p), E::Perm(q)) => E::Perm(p.compose(q)),
            (Law::Product(g, h), E::Pair(a1, a2), E::Pair(b1, b2)) => {
                E::pair(g.multiply(a1, b1), h.multiply(a2, b2))
            }
            _ => panic!("element {a} or {b} does not belong to {}", self.spec),
        }
    }

    pub fn inverse(&self, a: &GroupElement) -> GroupElement {
        use GroupElement as E;
        match (&self.law, a) {
            (Law::Cyclic(k), E::Cyclic(x)) => E::Cyclic((k - x % k) % k),
            (Law::Quaternion, E::Quaternion(q)) => E::Quaternion(q.inverse()),
            (Law::Milnor(moduli), E::Milnor { x, y, z, q }) => {
                // (v, q)^{-1} = (-(q^{-1}·v), q^{-1}) and q acts by an involution
                let signs = q.action_signs();
                let v = [*x, *y, *z];
                let mut w = [0u64; 3];
                for t in 0..3 {
                    let m = moduli[t];
                    let acted = if signs[t] { (m - v[t] % m) % m } else { v[t] };
                    w[t] = (m - acted) % m;
                }
                E::Milnor {
                    x: w[0],
                    y: w[1],
                    z: w[2],
                    q: q.inverse(),
                }
            }
            (Law::Perm(_), E::Perm(p)) => E::Perm(p.inverse()),
            (Law::Product(g, h), E::Pair(a1, a2)) => E::pair(g.inverse(a1), h.inverse(a2)),
            _ => panic!("element {a} does not belong to {}", self.spec),
        }
    }

    pub fn power(&self, a: &GroupElement, mut exp: u64) -> GroupElement {
        let mut acc = self.identity.clone();
        let mut base = a.clone();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.multiply(&acc, &base);
            }
            base = self.multiply(&base, &base);
            exp >>= 1;
        }
        acc
    }

    pub fn element_order(&self, a: &GroupElement) -> u64 {
        use GroupElement as E;
        match (&self.law, a) {
            (Law::Cyclic(k), E::Cyclic(x)) => k / k.gcd(x),
            (Law::Perm(_), E::Perm(p)) => p
                .cycles()
                .iter()
                .fold(1u64, |acc, c| acc.lcm(&(c.len() as u64))),
            (Law::Product(g, h), E::Pair(a1, a2)) => {
                g.element_order(a1).lcm(&h.element_order(a2))
            }
            _ => {
                let mut x = a.clone();
                let mut n = 1;
                while x != self.identity {
                    x = self.multiply(&x, a);
                    n += 1;
                }
                n
            }
        }
    }

    pub fn conjugate(&self, by: &GroupElement, x: &GroupElement) -> GroupElement {
        self.multiply(&self.multiply(by, x), &self.inverse(by))
    }

    /// Elements in deterministic (lexicographic) order, cached after the first call.
    pub fn enumerate(&self) -> Result<Arc<ElementIndex>> {
        if !self.is_enumerable() {
            return Err(Error::EnumerationBound {
                order: self.order,
                bound: self.enumeration_bound,
            });
        }
        if let Some(idx) = self.elements.get() {
            return Ok(idx.clone());
        }
        let elements = self.list_elements()?;
        debug_assert_eq!(elements.len() as u64, self.order);
        Ok(self
            .elements
            .get_or_init(|| Arc::new(ElementIndex::new(elements)))
            .clone())
    }

    fn list_elements(&self) -> Result<Vec<GroupElement>> {
        use GroupElement as E;
        Ok(match &self.law {
            Law::Cyclic(k) => (0..*k).map(E::Cyclic).collect(),
            Law::Quaternion => Q8Element::all().into_iter().map(E::Quaternion).collect(),
            Law::Milnor([a, b, c]) => {
                let mut out = Vec::with_capacity(self.order as usize);
                for x in 0..*a {
                    for y in 0..*b {
                        for z in 0..*c {
                            for q in Q8Element::all() {
                                out.push(E::Milnor { x, y, z, q });
                            }
                        }
                    }
                }
                out
            }
            Law::Perm(n) => {
                let even_only = matches!(self.spec, GroupSpec::Alternating(_));
                Perm::all(*n)
                    .into_iter()
                    .filter(|p| !even_only || p.is_even())
                    .map(E::Perm)
                    .collect()
            }
            Law::Product(g, h) => {
                let gs = g.enumerate()?;
                let hs = h.enumerate()?;
                let mut out = Vec::with_capacity(self.order as usize);
                for x in gs.elements() {
                    for y in hs.elements() {
                        out.push(E::pair(x.clone(), y.clone()));
                    }
                }
                out
            }
        })
    }

    /// Position of `x` in the deterministic element order. Products are
    /// indexed through their factors, so only the factors get enumerated.
    pub fn position(&self, x: &GroupElement) -> Result<Option<usize>> {
        match (&self.law, x) {
            (Law::Product(g, h), GroupElement::Pair(a, b)) => {
                let (Some(i), Some(j)) = (g.position(a)?, h.position(b)?) else {
                    return Ok(None);
                };
                Ok(Some(i * h.order as usize + j))
            }
            (Law::Product(..), _) => Ok(None),
            _ => Ok(self.enumerate()?.index_of(x)),
        }
    }

    /// Element at `position` in the deterministic order.
    pub fn element_at(&self, position: usize) -> Result<GroupElement> {
        if position as u64 >= self.order {
            return Err(Error::Internal(format!("position {position} out of range for {}", self.spec)));
        }
        match &self.law {
            Law::Product(g, h) => {
                let n = h.order as usize;
                Ok(GroupElement::pair(g.element_at(position / n)?, h.element_at(position % n)?))
            }
            _ => Ok(self.enumerate()?.elements()[position].clone()),
        }
    }

    /// Subgroup generated by `gens`, as a set, by breadth-first closure.
    pub fn subgroup_closure(&self, gens: &[GroupElement]) -> HashSet<GroupElement> {
        let mut seen = HashSet::new();
        seen.insert(self.identity.clone());
        let mut queue = VecDeque::from([self.identity.clone()]);
        while let Some(x) = queue.pop_front() {
            for s in gens {
                let y = self.multiply(&x, s);
                if seen.insert(y.clone()) {
                    queue.push_back(y);
                }
            }
        }
        seen
    }
}

/// All elements of `g`, once each, in the deterministic order.
pub fn enumerate_elements(g: &GroupModel) -> Result<Vec<GroupElement>> {
    Ok(g.enumerate()?.elements().to_vec())
}
