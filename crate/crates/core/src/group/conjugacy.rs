use std::collections::VecDeque;
use std::sync::Arc;

use num_integer::Integer;
use serde::Serialize;

use super::element::GroupElement;
use super::model::{ElementIndex, GroupModel};
use crate::error::{Error, Result};

/// One conjugacy class, represented by its least element.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassInfo {
    pub representative: GroupElement,
    pub size: u64,
    pub element_order: u64,
    pub centralizer_order: u64,
}

#[derive(Debug)]
enum ClassLookup {
    Table {
        index: Arc<ElementIndex>,
        class_of: Vec<u32>,
    },
    Product(Arc<ConjugacyData>, Arc<ConjugacyData>),
}

/// Conjugacy classes of a group together with its power maps.
///
/// Classes are sorted by representative; the identity class is always first.
/// For direct products the classes are pairs `(i, j)` listed with `i` major.
#[derive(Debug)]
pub struct ConjugacyData {
    pub classes: Vec<ClassInfo>,
    pub exponent: u64,
    group_order: u64,
    lookup: ClassLookup,
    // power_maps[s][c] = class of x^s for x in class c, 0 <= s < exponent
    power_maps: Vec<Vec<u32>>,
}

impl ConjugacyData {
    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn group_order(&self) -> u64 {
        self.group_order
    }

    /// Class index of an arbitrary element.
    pub fn class_of(&self, x: &GroupElement) -> Option<usize> {
        match &self.lookup {
            ClassLookup::Table { index, class_of } => {
                index.index_of(x).map(|i| class_of[i] as usize)
            }
            ClassLookup::Product(a, b) => match x {
                GroupElement::Pair(x1, x2) => Some(a.class_of(x1)? * b.len() + b.class_of(x2)?),
                _ => None,
            },
        }
    }

    /// Class index by element position in the enumeration (non-product groups only).
    pub fn class_of_index(&self, i: usize) -> Option<usize> {
        match &self.lookup {
            ClassLookup::Table { class_of, .. } => class_of.get(i).map(|&c| c as usize),
            ClassLookup::Product(..) => None,
        }
    }

    /// Class of `x^s` for `x` in class `class`.
    pub fn power_class_map(&self, class: usize, s: u64) -> usize {
        self.power_maps[(s % self.exponent) as usize][class] as usize
    }

    /// Class of the inverses of class `class`.
    pub fn inverse_class(&self, class: usize) -> usize {
        self.power_class_map(class, self.exponent - 1)
    }

    /// Factor class data of a product group.
    pub fn factors(&self) -> Option<(&ConjugacyData, &ConjugacyData)> {
        match &self.lookup {
            ClassLookup::Product(a, b) => Some((a, b)),
            ClassLookup::Table { .. } => None,
        }
    }
}

/// Computes conjugacy classes and power maps. Products are handled factorwise,
/// so they need not be enumerable; other groups must be.
pub fn conjugacy_classes(g: &GroupModel) -> Result<ConjugacyData> {
    if let Some((a, b)) = g.factors() {
        let ca = conjugacy_classes(a)?;
        let cb = conjugacy_classes(b)?;
        return Ok(product_conjugacy(Arc::new(ca), Arc::new(cb)));
    }
    let index = g.enumerate()?;
    let els = index.elements();
    let gens: Vec<(GroupElement, GroupElement)> = g
        .generators()
        .iter()
        .map(|s| (s.clone(), g.inverse(s)))
        .collect();
    let unassigned = u32::MAX;
    let mut class_of = vec![unassigned; els.len()];
    let mut classes = Vec::new();
    for start in 0..els.len() {
        if class_of[start] != unassigned {
            continue;
        }
        let id = classes.len() as u32;
        class_of[start] = id;
        let mut size = 1u64;
        let mut queue = VecDeque::from([start]);
        while let Some(i) = queue.pop_front() {
            for (s, s_inv) in &gens {
                let y = g.multiply(&g.multiply(s, &els[i]), s_inv);
                let j = index
                    .index_of(&y)
                    .ok_or_else(|| Error::Internal(format!("conjugate {y} not enumerated")))?;
                if class_of[j] == unassigned {
                    class_of[j] = id;
                    size += 1;
                    queue.push_back(j);
                }
            }
        }
        let rep = els[start].clone();
        classes.push(ClassInfo {
            element_order: g.element_order(&rep),
            representative: rep,
            size,
            centralizer_order: g.order() / size,
        });
    }
    let exponent = classes
        .iter()
        .fold(1u64, |acc, c| acc.lcm(&c.element_order));
    let mut power_maps = vec![vec![0u32; classes.len()]; exponent as usize];
    for (c, info) in classes.iter().enumerate() {
        let mut x = g.identity().clone();
        for row in power_maps.iter_mut() {
            let i = index
                .index_of(&x)
                .ok_or_else(|| Error::Internal(format!("power {x} not enumerated")))?;
            row[c] = class_of[i];
            x = g.multiply(&x, &info.representative);
        }
    }
    // class(x^s) must not depend on the representative; x^s has period ord(x)
    for (i, x) in els.iter().enumerate() {
        let c = class_of[i] as usize;
        let mut y = x.clone();
        for s in 1..classes[c].element_order {
            let j = index
                .index_of(&y)
                .ok_or_else(|| Error::Internal(format!("power {y} not enumerated")))?;
            if power_maps[s as usize][c] != class_of[j] {
                return Err(Error::Internal(format!(
                    "power map of {} depends on the class representative",
                    g.spec()
                )));
            }
            y = g.multiply(&y, x);
        }
    }
    let data = ConjugacyData {
        classes,
        exponent,
        group_order: g.order(),
        lookup: ClassLookup::Table { index, class_of },
        power_maps,
    };
    for c in 0..data.len() {
        if data.inverse_class(data.inverse_class(c)) != c {
            return Err(Error::Internal("inverse-class map is not an involution".into()));
        }
    }
    Ok(data)
}

/// Classes of a direct product from the classes of its factors.
pub fn product_conjugacy(a: Arc<ConjugacyData>, b: Arc<ConjugacyData>) -> ConjugacyData {
    let mut classes = Vec::with_capacity(a.len() * b.len());
    for x in &a.classes {
        for y in &b.classes {
            classes.push(ClassInfo {
                representative: GroupElement::pair(x.representative.clone(), y.representative.clone()),
                size: x.size * y.size,
                element_order: x.element_order.lcm(&y.element_order),
                centralizer_order: x.centralizer_order * y.centralizer_order,
            });
        }
    }
    let exponent = a.exponent.lcm(&b.exponent);
    let nb = b.len();
    let power_maps = (0..exponent)
        .map(|s| {
            let mut row = Vec::with_capacity(classes.len());
            for i in 0..a.len() {
                for j in 0..nb {
                    let pi = a.power_class_map(i, s);
                    let pj = b.power_class_map(j, s);
                    row.push((pi * nb + pj) as u32);
                }
            }
            row
        })
        .collect();
    ConjugacyData {
        classes,
        exponent,
        group_order: a.group_order * b.group_order,
        lookup: ClassLookup::Product(a, b),
        power_maps,
    }
}

/// Class of `x^s` for `x` in class `class`.
pub fn power_class_map(data: &ConjugacyData, class: usize, s: u64) -> usize {
    data.power_class_map(class, s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::model::{construct_group, GroupOptions};

    fn classes(s: &str) -> (GroupModel, ConjugacyData) {
        let g = construct_group(&s.parse().unwrap(), &GroupOptions::default()).unwrap();
        let c = conjugacy_classes(&g).unwrap();
        (g, c)
    }

    #[test]
    fn class_counts() {
        for (s, n) in [
            ("cyclic(7)", 7),
            ("q8", 5),
            ("alt(4)", 4),
            ("alt(5)", 5),
            ("sym(5)", 7),
            ("alt(6)", 7),
            ("alt(7)", 9),
            ("milnor(3,5,1)", 21),
            ("product(q8,alt(5))", 25),
        ] {
            let (g, c) = classes(s);
            assert_eq!(c.len(), n, "{s}");
            assert_eq!(c.classes.iter().map(|x| x.size).sum::<u64>(), g.order());
            assert_eq!(&c.classes[0].representative, g.identity());
        }
    }

    #[test]
    fn exponents() {
        assert_eq!(classes("alt(7)").1.exponent, 420);
        assert_eq!(classes("q8").1.exponent, 4);
        assert_eq!(classes("milnor(3,5,1)").1.exponent, 60);
    }

    #[test]
    fn power_maps_agree_with_elements() {
        for s in ["milnor(3,5,1)", "alt(5)", "sym(5)", "q8"] {
            let (g, c) = classes(s);
            let idx = g.enumerate().unwrap();
            for x in idx.elements() {
                let cx = c.class_of(x).unwrap();
                let mut y = g.identity().clone();
                for p in 0..c.exponent {
                    assert_eq!(c.class_of(&y), Some(c.power_class_map(cx, p)));
                    y = g.multiply(&y, x);
                }
            }
        }
    }

    #[test]
    fn representatives_are_least() {
        let (g, c) = classes("sym(4)");
        let idx = g.enumerate().unwrap();
        for x in idx.elements() {
            let k = c.class_of(x).unwrap();
            assert!(c.classes[k].representative <= *x);
        }
    }

    #[test]
    fn product_lookup_matches_pairs() {
        let (g, c) = classes("product(q8,cyclic(3))");
        let idx = g.enumerate().unwrap();
        let direct = conjugacy_classes(&construct_group(
            &"product(q8,cyclic(3))".parse().unwrap(),
            &GroupOptions::default(),
        )
        .unwrap())
        .unwrap();
        assert_eq!(c.len(), 15);
        for x in idx.elements() {
            for y in idx.elements() {
                let same = g.conjugate(y, x);
                assert_eq!(c.class_of(&same), direct.class_of(x));
            }
        }
    }
}
