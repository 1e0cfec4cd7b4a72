use std::collections::{BTreeMap, HashMap};

use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use super::complex::SimplicialComplex;
use crate::error::{Error, Result};
use crate::linalg::{sparse_smith_normal_form, SmithForm, SparseIntMatrix};

/// One homology group `Z^betti ⊕ Z/t1 ⊕ ... ⊕ Z/tk` with `t1 | t2 | ...`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomologyGroup {
    pub betti: u64,
    pub torsion: Vec<u64>,
}

impl HomologyGroup {
    pub fn is_zero(&self) -> bool {
        self.betti == 0 && self.torsion.is_empty()
    }

    pub fn is_z(&self) -> bool {
        self.betti == 1 && self.torsion.is_empty()
    }
}

/// Integral homology in degrees `0..=dim`, unreduced and reduced.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomologyProfile {
    pub f_vector: Vec<u64>,
    pub euler_characteristic: i64,
    pub unreduced: BTreeMap<usize, HomologyGroup>,
    pub reduced: BTreeMap<usize, HomologyGroup>,
}

impl HomologyProfile {
    pub fn dimension(&self) -> i64 {
        self.f_vector.len() as i64 - 1
    }

    pub fn reduced_in(&self, degree: usize) -> HomologyGroup {
        self.reduced.get(&degree).cloned().unwrap_or_default()
    }

    /// Alternating sum of the unreduced Betti numbers.
    pub fn betti_euler_characteristic(&self) -> i64 {
        self.unreduced
            .iter()
            .map(|(&k, h)| if k % 2 == 0 { h.betti as i64 } else { -(h.betti as i64) })
            .sum()
    }

    /// Reduced homology is `Z` in degree `d` and zero elsewhere.
    pub fn is_sphere_profile(&self, d: usize) -> bool {
        self.reduced_in(d).is_z()
            && self.reduced.iter().all(|(&k, h)| k == d || h.is_zero())
    }
}

/// Boundary map `C_k -> C_{k-1}` for `k >= 1`, rows indexed by `(k-1)`-faces.
/// Removing the vertex in position `i` of a sorted face carries sign `(-1)^i`.
pub fn boundary_matrix(k: &SimplicialComplex, degree: usize) -> SparseIntMatrix {
    let faces = k.faces();
    assert!(degree >= 1 && degree < faces.len(), "degree out of range");
    let lower: HashMap<&[u32], usize> = faces[degree - 1]
        .iter()
        .enumerate()
        .map(|(i, f)| (f.as_slice(), i))
        .collect();
    let mut m = SparseIntMatrix::new(faces[degree - 1].len(), faces[degree].len());
    let mut buf = Vec::with_capacity(degree);
    for (col, face) in faces[degree].iter().enumerate() {
        for skip in 0..face.len() {
            buf.clear();
            buf.extend(face.iter().enumerate().filter(|&(i, _)| i != skip).map(|(_, &v)| v));
            let row = lower[buf.as_slice()];
            m.push(row, col, if skip % 2 == 0 { 1 } else { -1 });
        }
    }
    m
}

fn torsion_u64(snf: &SmithForm) -> Result<Vec<u64>> {
    snf.torsion()
        .iter()
        .map(|t| {
            t.to_u64()
                .ok_or_else(|| Error::Internal(format!("torsion coefficient {t} exceeds u64")))
        })
        .collect()
}

/// Integral simplicial homology via Smith normal forms of the boundary maps.
pub fn homology(k: &SimplicialComplex) -> Result<HomologyProfile> {
    let f_vector = k.f_vector();
    let top = f_vector.len();
    // snf[d] is the form of the boundary C_d -> C_{d-1}, for 1 <= d < top
    let mut snf: Vec<Option<SmithForm>> = vec![None; top + 1];
    for d in 1..top {
        snf[d] = Some(sparse_smith_normal_form(&boundary_matrix(k, d)));
    }
    let rank = |d: usize| snf.get(d).and_then(|s| s.as_ref()).map_or(0, |s| s.rank as u64);
    let mut unreduced = BTreeMap::new();
    let mut reduced = BTreeMap::new();
    for d in 0..top {
        let betti = f_vector[d] - rank(d) - rank(d + 1);
        let torsion = match snf.get(d + 1).and_then(|s| s.as_ref()) {
            Some(s) => torsion_u64(s)?,
            None => Vec::new(),
        };
        let h = HomologyGroup { betti, torsion };
        let mut r = h.clone();
        if d == 0 {
            // augmentation onto Z is surjective for a nonempty complex
            r.betti -= 1;
        }
        unreduced.insert(d, h);
        reduced.insert(d, r);
    }
    Ok(HomologyProfile {
        euler_characteristic: k.euler_characteristic(),
        f_vector,
        unreduced,
        reduced,
    })
}

/// Reduced homology equals `Z` in degree `d` and vanishes in every other degree.
pub fn is_homology_sphere(k: &SimplicialComplex, d: usize) -> Result<bool> {
    Ok(homology(k)?.is_sphere_profile(d))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::smith_normal_form;
    use crate::simplicial::complex::{join, suspension, VertexLabel};

    fn projective_plane() -> SimplicialComplex {
        let facets: [[u32; 3]; 10] = [
            [1, 2, 3], [1, 3, 4], [1, 4, 5], [1, 5, 6], [1, 2, 6],
            [2, 3, 5], [3, 4, 6], [2, 4, 5], [3, 5, 6], [2, 4, 6],
        ];
        SimplicialComplex::from_facets(
            facets.iter().map(|f| f.iter().map(|&v| VertexLabel::Index(v)).collect()).collect(),
        )
        .unwrap()
    }

    #[test]
    fn spheres() {
        for n in 0..=4 {
            let h = homology(&SimplicialComplex::sphere(n)).unwrap();
            assert!(h.is_sphere_profile(n), "sphere({n}): {h:?}");
            assert_eq!(h.unreduced[&0].betti, if n == 0 { 2 } else { 1 });
        }
        let s0 = homology(&SimplicialComplex::points(2).unwrap()).unwrap();
        assert_eq!(s0.unreduced[&0].betti, 2);
        assert!(s0.is_sphere_profile(0));
    }

    #[test]
    fn projective_plane_torsion() {
        let rp2 = projective_plane();
        assert_eq!(rp2.f_vector(), vec![6, 15, 10]);
        let h = homology(&rp2).unwrap();
        assert_eq!(h.unreduced[&0], HomologyGroup { betti: 1, torsion: vec![] });
        assert_eq!(h.unreduced[&1], HomologyGroup { betti: 0, torsion: vec![2] });
        assert!(h.unreduced[&2].is_zero());
        assert!(!is_homology_sphere(&rp2, 2).unwrap());
        // dense oracle on both boundary matrices
        let d2 = smith_normal_form(&boundary_matrix(&rp2, 2).to_dense());
        assert_eq!(d2.rank, 10);
        assert_eq!(torsion_u64(&d2).unwrap(), vec![2]);
        let d1 = smith_normal_form(&boundary_matrix(&rp2, 1).to_dense());
        assert_eq!(d1.rank, 5);
    }

    #[test]
    fn boundary_squares_to_zero() {
        let k = join(&SimplicialComplex::sphere(1), &projective_plane());
        for d in 2..k.faces().len() {
            let a = boundary_matrix(&k, d - 1).to_dense();
            let b = boundary_matrix(&k, d).to_dense();
            let p = a.mul(&b).unwrap();
            for i in 0..p.rows() {
                for j in 0..p.cols() {
                    assert_eq!(*p.get(i, j), 0.into());
                }
            }
        }
    }

    #[test]
    fn bundled_m3_is_homology_sphere() {
        let m = SimplicialComplex::poincare_sphere();
        let h = homology(&m).unwrap();
        assert!(h.is_sphere_profile(3), "{h:?}");
        let s5 = homology(&suspension(&suspension(&m))).unwrap();
        assert!(s5.is_sphere_profile(5));
    }

    #[test]
    fn euler_characteristic_matches_betti() {
        for k in [projective_plane(), SimplicialComplex::sphere(3), SimplicialComplex::points(4).unwrap()] {
            let h = homology(&k).unwrap();
            assert_eq!(h.euler_characteristic, h.betti_euler_characteristic());
        }
    }

    #[test]
    fn json_shape() {
        let h = homology(&SimplicialComplex::sphere(1)).unwrap();
        let v = serde_json::to_value(&h).unwrap();
        assert_eq!(v["reduced"]["1"]["betti"], 1);
        assert_eq!(v["f_vector"], serde_json::json!([3, 3]));
    }
}
