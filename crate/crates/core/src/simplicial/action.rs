//! Finite group actions on simplicial complexes by vertex permutations.
//!
//! Convention: `perm(g)[v]` is the image of vertex `v`, and
//! `perm(g h) = perm(g) ∘ perm(h)`.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;
use std::sync::Arc;

use super::complex::{join, SimplicialComplex, VertexLabel};
use crate::error::{Error, Result};
use crate::group::{GroupElement, GroupModel};

#[derive(Clone)]
enum Realization {
    /// Every element acts as the identity.
    Trivial,
    /// Permutations of all elements, indexed by element position.
    Table(Arc<Vec<u32>>),
    /// `(g, h)` acts as `left(g) ∘ right(h)`; both act on the same complex and commute.
    Product(Arc<SimplicialAction>, Arc<SimplicialAction>),
    /// Blockwise action on a join: left vertices first, then right ones.
    Join(Arc<SimplicialAction>, Arc<SimplicialAction>),
    /// Action of one factor of a product, obtained by pulling back.
    Restrict { parent: Arc<SimplicialAction>, left: bool },
}

/// A validated action of a group on a complex.
#[derive(Clone)]
pub struct SimplicialAction {
    group: Arc<GroupModel>,
    complex: Arc<SimplicialComplex>,
    realization: Realization,
}

impl fmt::Debug for SimplicialAction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SimplicialAction")
            .field("group", &self.group.spec().to_string())
            .field("vertices", &self.complex.vertex_count())
            .finish()
    }
}

fn compose(a: &[u32], b: &[u32]) -> Vec<u32> {
    b.iter().map(|&v| a[v as usize]).collect()
}

fn identity(n: usize) -> Vec<u32> {
    (0..n as u32).collect()
}

fn is_identity(p: &[u32]) -> bool {
    p.iter().enumerate().all(|(i, &v)| i as u32 == v)
}

fn check_automorphism(k: &SimplicialComplex, map: &[u32], generator: usize) -> Result<()> {
    let n = k.vertex_count();
    if map.len() != n {
        return Err(Error::Action(format!(
            "generator {generator} maps {} vertices, the complex has {n}",
            map.len()
        )));
    }
    let mut seen = vec![false; n];
    for &v in map {
        if v as usize >= n || std::mem::replace(&mut seen[v as usize], true) {
            return Err(Error::Action(format!("generator {generator} is not a vertex bijection")));
        }
    }
    let facets: HashSet<&[u32]> = k.facets().iter().map(Vec::as_slice).collect();
    for f in k.facets() {
        let mut image: Vec<u32> = f.iter().map(|&v| map[v as usize]).collect();
        image.sort_unstable();
        if !facets.contains(image.as_slice()) {
            let names: Vec<String> = f.iter().map(|&v| k.vertices()[v as usize].to_string()).collect();
            return Err(Error::Action(format!(
                "generator {generator} does not map facet {{{}}} to a facet",
                names.join(" ")
            )));
        }
    }
    Ok(())
}

/// Action of `group` on `complex` given by one vertex map per generator
/// (`maps[i][v]` is the image of vertex index `v` under generator `i`).
///
/// Every map must be a facet-preserving bijection and the assignment must
/// respect the group relations. Product groups are handled factor by factor:
/// the generators of each factor must define actions and the two families
/// must commute, so the product group is never enumerated.
pub fn make_action(
    group: Arc<GroupModel>,
    complex: Arc<SimplicialComplex>,
    maps: Vec<Vec<u32>>,
) -> Result<SimplicialAction> {
    let gens = group.generators();
    if maps.len() != gens.len() {
        return Err(Error::Action(format!(
            "{} has {} generators, got {} vertex maps",
            group.spec(),
            gens.len(),
            maps.len()
        )));
    }
    for (i, m) in maps.iter().enumerate() {
        check_automorphism(&complex, m, i)?;
    }
    if maps.iter().all(|m| is_identity(m)) {
        return Ok(SimplicialAction::trivial(group, complex));
    }
    if let Some((g, h)) = group.factors() {
        let (g, h) = (g.clone(), h.clone());
        let split = g.generators().len();
        let right_maps = maps[split..].to_vec();
        let mut left_maps = maps;
        left_maps.truncate(split);
        for (i, a) in left_maps.iter().enumerate() {
            for (j, b) in right_maps.iter().enumerate() {
                if compose(a, b) != compose(b, a) {
                    return Err(Error::Action(format!(
                        "generator {i} of the first factor and generator {j} of the second do not commute"
                    )));
                }
            }
        }
        let left = make_action(g, complex.clone(), left_maps)?;
        let right = make_action(h, complex.clone(), right_maps)?;
        return Ok(SimplicialAction {
            group,
            complex,
            realization: Realization::Product(Arc::new(left), Arc::new(right)),
        });
    }
    let table = permutation_table(&group, complex.vertex_count(), &maps)?;
    Ok(SimplicialAction {
        group,
        complex,
        realization: Realization::Table(Arc::new(table)),
    })
}

/// Extends the generator maps to every element by breadth-first search over
/// the Cayley graph; any inconsistency is a violated relation.
fn permutation_table(group: &GroupModel, n: usize, maps: &[Vec<u32>]) -> Result<Vec<u32>> {
    let index = group.enumerate()?;
    let order = index.len();
    let mut table = vec![u32::MAX; order * n];
    let mut known = vec![false; order];
    let start = index
        .index_of(group.identity())
        .ok_or_else(|| Error::Internal("identity missing from enumeration".into()))?;
    table[start * n..(start + 1) * n].copy_from_slice(&identity(n));
    known[start] = true;
    let mut queue = VecDeque::from([start]);
    while let Some(x) = queue.pop_front() {
        let px = table[x * n..(x + 1) * n].to_vec();
        for (s, gen) in group.generators().iter().enumerate() {
            let y = group.multiply(&index.elements()[x], gen);
            let yi = index
                .index_of(&y)
                .ok_or_else(|| Error::Internal(format!("product {y} missing from enumeration")))?;
            let py = compose(&px, &maps[s]);
            if known[yi] {
                if table[yi * n..(yi + 1) * n] != py[..] {
                    return Err(Error::Action(format!(
                        "vertex maps violate a relation of {} at element {y}",
                        group.spec()
                    )));
                }
            } else {
                table[yi * n..(yi + 1) * n].copy_from_slice(&py);
                known[yi] = true;
                queue.push_back(yi);
            }
        }
    }
    if known.iter().any(|k| !k) {
        return Err(Error::Internal(format!("generators of {} do not generate it", group.spec())));
    }
    Ok(table)
}

/// Action from label maps: generator `i` sends `v` to `maps[i][v]`, and fixes
/// every vertex that is not listed.
pub fn make_action_from_labels(
    group: Arc<GroupModel>,
    complex: Arc<SimplicialComplex>,
    maps: &[HashMap<VertexLabel, VertexLabel>],
) -> Result<SimplicialAction> {
    let mut out = Vec::with_capacity(maps.len());
    for (i, m) in maps.iter().enumerate() {
        let mut p = identity(complex.vertex_count());
        for (from, to) in m {
            let (Some(a), Some(b)) = (complex.vertex_index(from), complex.vertex_index(to)) else {
                return Err(Error::Action(format!(
                    "generator {i} maps {from} to {to}, which is not a pair of vertices"
                )));
            };
            p[a as usize] = b;
        }
        out.push(p);
    }
    make_action(group, complex, out)
}

impl SimplicialAction {
    pub fn trivial(group: Arc<GroupModel>, complex: Arc<SimplicialComplex>) -> Self {
        SimplicialAction {
            group,
            complex,
            realization: Realization::Trivial,
        }
    }

    /// Cyclic group `Z_k` rotating `polygon(size)` by `size / k` steps.
    pub fn polygon_rotation(group: Arc<GroupModel>, size: usize) -> Result<Self> {
        let k = group.order() as usize;
        let spec = group.spec().to_string();
        if group.generators().len() > 1 || k == 0 || !size.is_multiple_of(k.max(1)) {
            return Err(Error::Action(format!("{spec} cannot rotate polygon({size})")));
        }
        let complex = Arc::new(SimplicialComplex::polygon(size)?);
        let step = size / k;
        let maps = group
            .generators()
            .iter()
            .map(|_| (0..size).map(|v| ((v + step) % size) as u32).collect())
            .collect();
        make_action(group, complex, maps)
    }

    /// A permutation group `S_n` or `A_n` permuting the `n` vertices of `∂Δ^{n-1}`.
    pub fn simplex_permutation(group: Arc<GroupModel>) -> Result<Self> {
        let mut maps = Vec::new();
        let mut n = None;
        for g in group.generators() {
            let GroupElement::Perm(p) = g else {
                return Err(Error::Action(format!("{} is not a permutation group", group.spec())));
            };
            n = Some(p.degree());
            maps.push(p.0.iter().map(|&v| v as u32).collect());
        }
        let n = n.ok_or_else(|| Error::Action(format!("{} has no generators", group.spec())))?;
        if n < 2 {
            return Err(Error::Action("need at least two points".into()));
        }
        let complex = Arc::new(SimplicialComplex::sphere(n - 2));
        make_action(group, complex, maps)
    }

    /// Action of `G × H` on the same complex with `H` acting trivially.
    pub fn extend_left(self, other: Arc<GroupModel>) -> Self {
        self.extend(other, true)
    }

    /// Action of `H × G` on the same complex with `H` acting trivially.
    pub fn extend_right(self, other: Arc<GroupModel>) -> Self {
        self.extend(other, false)
    }

    fn extend(self, other: Arc<GroupModel>, keep_left: bool) -> Self {
        let complex = self.complex.clone();
        let trivial = Arc::new(SimplicialAction::trivial(other.clone(), complex.clone()));
        let mine = Arc::new(self);
        let (group, l, r) = if keep_left {
            let g = crate::group::product_group(mine.group.clone(), other);
            (g, mine, trivial)
        } else {
            let g = crate::group::product_group(other, mine.group.clone());
            (g, trivial, mine)
        };
        SimplicialAction {
            group: Arc::new(group),
            complex,
            realization: Realization::Product(l, r),
        }
    }

    pub fn group(&self) -> &Arc<GroupModel> {
        &self.group
    }

    pub fn complex(&self) -> &Arc<SimplicialComplex> {
        &self.complex
    }

    /// Vertex permutation of `g`.
    pub fn perm(&self, g: &GroupElement) -> Result<Vec<u32>> {
        let n = self.complex.vertex_count();
        match &self.realization {
            Realization::Trivial => Ok(identity(n)),
            Realization::Table(t) => {
                let i = self.group.position(g)?.ok_or_else(|| {
                    Error::Action(format!("{g} is not an element of {}", self.group.spec()))
                })?;
                Ok(t[i * n..(i + 1) * n].to_vec())
            }
            Realization::Product(l, r) => {
                let GroupElement::Pair(a, b) = g else {
                    return Err(Error::Action(format!("{g} is not an element of {}", self.group.spec())));
                };
                Ok(compose(&l.perm(a)?, &r.perm(b)?))
            }
            Realization::Join(l, r) => {
                let shift = l.complex.vertex_count() as u32;
                let mut p = l.perm(g)?;
                p.extend(r.perm(g)?.into_iter().map(|v| v + shift));
                Ok(p)
            }
            Realization::Restrict { parent, left } => {
                let (gm, hm) = parent
                    .group
                    .factors()
                    .ok_or_else(|| Error::Internal("restriction of a non-product action".into()))?;
                let lifted = if *left {
                    GroupElement::pair(g.clone(), hm.identity().clone())
                } else {
                    GroupElement::pair(gm.identity().clone(), g.clone())
                };
                parent.perm(&lifted)
            }
        }
    }

    /// Vertex maps of the group's generators.
    pub fn generator_maps(&self) -> Result<Vec<Vec<u32>>> {
        self.group.generators().iter().map(|g| self.perm(g)).collect()
    }

    /// Pull back along the inclusion of the first (`left = true`) or second factor.
    pub fn restrict_to_factor(self: &Arc<Self>, left: bool) -> Result<SimplicialAction> {
        let (g, h) = self
            .group
            .factors()
            .ok_or_else(|| Error::Action(format!("{} is not a product group", self.group.spec())))?;
        let factor = if left { g.clone() } else { h.clone() };
        // products built factorwise already hold the factor actions
        if let Realization::Product(l, r) = &self.realization {
            let part = if left { l } else { r };
            return Ok(SimplicialAction::clone(part));
        }
        Ok(SimplicialAction {
            group: factor,
            complex: self.complex.clone(),
            realization: Realization::Restrict {
                parent: self.clone(),
                left,
            },
        })
    }

    /// Calls `f` on every element and its permutation, in position order.
    pub fn for_each_element(&self, mut f: impl FnMut(&GroupElement, &[u32]) -> bool) -> Result<()> {
        let order = usize::try_from(self.group.order())
            .map_err(|_| Error::Action("group too large to scan".into()))?;
        if !self.group.is_enumerable() && self.group.factors().is_none() {
            return Err(Error::EnumerationBound {
                order: self.group.order(),
                bound: self.group.enumeration_bound(),
            });
        }
        for p in 0..order {
            let g = self.group.element_at(p)?;
            let perm = self.perm(&g)?;
            if !f(&g, &perm) {
                break;
            }
        }
        Ok(())
    }

    /// Elements acting as the identity, in position order.
    pub fn kernel(&self) -> Result<Vec<GroupElement>> {
        let mut out = Vec::new();
        self.for_each_element(|g, p| {
            if is_identity(p) {
                out.push(g.clone());
            }
            true
        })?;
        Ok(out)
    }

    pub fn is_faithful(&self) -> Result<bool> {
        let mut trivial = 0usize;
        self.for_each_element(|_, p| {
            if is_identity(p) {
                trivial += 1;
            }
            trivial < 2
        })?;
        Ok(trivial == 1)
    }
}

/// Joins two actions of the same group blockwise on `join(K, L)`.
pub fn join_actions(a: &SimplicialAction, b: &SimplicialAction) -> Result<SimplicialAction> {
    if a.group.spec() != b.group.spec() {
        return Err(Error::Action(format!(
            "cannot join actions of {} and {}",
            a.group.spec(),
            b.group.spec()
        )));
    }
    if a.complex.is_void() {
        return Ok(b.clone());
    }
    if b.complex.is_void() {
        return Ok(a.clone());
    }
    let complex = Arc::new(join(&a.complex, &b.complex));
    let realization = match (&a.realization, &b.realization) {
        (Realization::Trivial, Realization::Trivial) => Realization::Trivial,
        _ => Realization::Join(Arc::new(a.clone()), Arc::new(b.clone())),
    };
    Ok(SimplicialAction {
        group: a.group.clone(),
        complex,
        realization,
    })
}

/// Subcomplex of simplices whose vertices are all fixed by `g`.
pub fn fixed_subcomplex(a: &SimplicialAction, g: &GroupElement) -> Result<SimplicialComplex> {
    let p = a.perm(g)?;
    let k = &a.complex;
    let faces = k
        .facets()
        .iter()
        .map(|f| f.iter().copied().filter(|&v| p[v as usize] == v).collect())
        .collect();
    Ok(SimplicialComplex::from_faces(k.vertices(), faces))
}

/// Vertex sets of the cycles of `p`.
fn cycles(p: &[u32]) -> Vec<Vec<u32>> {
    let mut seen = vec![false; p.len()];
    let mut out = Vec::new();
    for start in 0..p.len() {
        if seen[start] {
            continue;
        }
        let mut c = Vec::new();
        let mut v = start;
        while !seen[v] {
            seen[v] = true;
            c.push(v as u32);
            v = p[v] as usize;
        }
        c.sort_unstable();
        out.push(c);
    }
    out
}

/// No nontrivial element maps any simplex onto itself.
///
/// A simplex is stabilized by `g` exactly when it is a union of cycles of
/// `g`, so it is enough to test whether some cycle spans a face.
pub fn is_free_action(a: &SimplicialAction) -> Result<bool> {
    let k = &a.complex;
    let words = k.vertex_count().div_ceil(64).max(1);
    let facet_bits: Vec<Vec<u64>> = k
        .facets()
        .iter()
        .map(|f| {
            let mut b = vec![0u64; words];
            for &v in f {
                b[v as usize / 64] |= 1 << (v % 64);
            }
            b
        })
        .collect();
    let identity = a.group.identity().clone();
    let mut free = true;
    a.for_each_element(|g, p| {
        if *g == identity {
            return true;
        }
        for c in cycles(p) {
            let mut b = vec![0u64; words];
            for &v in &c {
                b[v as usize / 64] |= 1 << (v % 64);
            }
            if facet_bits
                .iter()
                .any(|f| f.iter().zip(&b).all(|(x, y)| y & !x == 0))
            {
                free = false;
                return false;
            }
        }
        true
    })?;
    Ok(free)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{construct_group, GroupOptions};
    use crate::simplicial::complex::link;

    fn group(s: &str) -> Arc<GroupModel> {
        Arc::new(construct_group(&s.parse().unwrap(), &GroupOptions::default()).unwrap())
    }

    #[test]
    fn trivial_actions() {
        let g = group("cyclic(3)");
        let k = Arc::new(SimplicialComplex::sphere(2));
        let a = make_action(g.clone(), k.clone(), vec![identity(4)]).unwrap();
        assert!(!is_free_action(&a).unwrap());
        assert_eq!(a.kernel().unwrap().len(), 3);
        assert_eq!(fixed_subcomplex(&a, &GroupElement::Cyclic(1)).unwrap(), *k);
        let t = SimplicialAction::trivial(group("cyclic(1)"), k);
        assert!(is_free_action(&t).unwrap());
    }

    #[test]
    fn rotations_are_free() {
        for (k, m) in [(3, 1), (4, 1), (5, 2), (2, 3), (6, 1)] {
            let a = SimplicialAction::polygon_rotation(group(&format!("cyclic({k})")), k * m).unwrap();
            assert!(is_free_action(&a).unwrap(), "Z{k} on polygon({})", k * m);
            assert!(a.is_faithful().unwrap());
            let fix = fixed_subcomplex(&a, &GroupElement::Cyclic(1)).unwrap();
            assert!(fix.is_void());
        }
    }

    #[test]
    fn bad_maps_rejected() {
        let g = group("cyclic(3)");
        let k = Arc::new(SimplicialComplex::polygon(4).unwrap());
        let err = make_action(g.clone(), k.clone(), vec![vec![1, 0, 2, 3]]).unwrap_err();
        assert!(err.to_string().contains("facet"), "{err}");
        // a quarter turn is an automorphism but has order 4, not 3
        let err = make_action(g, k, vec![vec![1, 2, 3, 0]]).unwrap_err();
        assert!(err.to_string().contains("relation"), "{err}");
        let err = make_action(group("cyclic(2)"), Arc::new(SimplicialComplex::sphere(1)), vec![vec![0, 0, 1]])
            .unwrap_err();
        assert!(err.to_string().contains("bijection"), "{err}");
    }

    #[test]
    fn alternating_group_on_simplex_boundary() {
        for n in [4, 5, 7] {
            let a = SimplicialAction::simplex_permutation(group(&format!("alt({n})"))).unwrap();
            assert_eq!(a.complex().vertex_count(), n);
            assert!(a.is_faithful().unwrap());
        }
    }

    #[test]
    fn cone_over_rotation_fixes_apexes() {
        let g = group("cyclic(3)");
        let rot = SimplicialAction::polygon_rotation(g.clone(), 3).unwrap();
        let pts = SimplicialAction::trivial(g, Arc::new(SimplicialComplex::points(2).unwrap()));
        let j = join_actions(&rot, &pts).unwrap();
        assert_eq!(j.complex().f_vector(), vec![5, 9, 6]);
        let fix = fixed_subcomplex(&j, &GroupElement::Cyclic(1)).unwrap();
        assert_eq!(fix.vertex_count(), 2);
        assert_eq!(fix.facets().len(), 2);
        assert!(fix.vertices().iter().all(|v| v.untag_right().is_some()));
    }

    fn swap_rotate(left: &str, size: usize) -> SimplicialAction {
        // first factor swaps points(2), second factor rotates the polygon
        let g = group(left);
        let (f1, f2) = g.factors().map(|(a, b)| (a.clone(), b.clone())).unwrap();
        let pts = Arc::new(SimplicialComplex::points(2).unwrap());
        let swap = make_action(f1.clone(), pts, vec![vec![1, 0]]).unwrap();
        let rot = SimplicialAction::polygon_rotation(f2.clone(), size).unwrap();
        let a = swap.extend_left(f2);
        let b = rot.extend_right(f1);
        join_actions(&a, &b).unwrap()
    }

    #[test]
    fn product_swap_and_rotation_is_not_free() {
        // (1, 0) swaps the points but fixes every polygon vertex
        let j = swap_rotate("product(cyclic(2),cyclic(3))", 3);
        assert!(!is_free_action(&j).unwrap());
        assert!(j.is_faithful().unwrap());
        let g = GroupElement::pair(GroupElement::Cyclic(1), GroupElement::Cyclic(0));
        let fix = fixed_subcomplex(&j, &g).unwrap();
        assert_eq!(fix.f_vector(), vec![3, 3]);
    }

    #[test]
    fn diagonal_involution_is_free() {
        let g = group("cyclic(2)");
        let pts = Arc::new(SimplicialComplex::points(2).unwrap());
        let swap = make_action(g.clone(), pts, vec![vec![1, 0]]).unwrap();
        let half = SimplicialAction::polygon_rotation(g, 4).unwrap();
        let j = join_actions(&swap, &half).unwrap();
        assert!(is_free_action(&j).unwrap());
        // one-step rotation of polygon(4) does not define a Z2 action
        let c2 = group("cyclic(2)");
        let k = Arc::new(SimplicialComplex::polygon(4).unwrap());
        assert!(make_action(c2, k, vec![vec![1, 2, 3, 0]]).is_err());
    }

    #[test]
    fn restriction_to_factors() {
        let j = Arc::new(swap_rotate("product(cyclic(2),cyclic(3))", 6));
        let joined = Arc::new(join_actions(&j, &j).unwrap());
        let right = joined.restrict_to_factor(false).unwrap();
        assert_eq!(right.group().spec().to_string(), "cyclic(3)");
        assert!(right.is_faithful().unwrap());
        let left = joined.restrict_to_factor(true).unwrap();
        assert_eq!(left.kernel().unwrap().len(), 1);
    }

    #[test]
    fn cone_point_links() {
        let g = group("cyclic(5)");
        let rot = SimplicialAction::polygon_rotation(g.clone(), 5).unwrap();
        let pts = SimplicialAction::trivial(g, Arc::new(SimplicialComplex::points(2).unwrap()));
        let j = join_actions(&rot, &pts).unwrap();
        let fix = fixed_subcomplex(&j, &GroupElement::Cyclic(2)).unwrap();
        for apex in fix.vertices() {
            let l = link(j.complex(), std::slice::from_ref(apex)).unwrap();
            assert!(l.isomorphic_along(rot.complex(), |v| v.untag_left().cloned()));
        }
    }
}
