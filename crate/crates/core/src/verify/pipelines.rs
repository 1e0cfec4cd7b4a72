use std::collections::BTreeMap;
use std::path::PathBuf;
use std::sync::Arc;
use std::time::Instant;

use serde::Serialize;
use serde_json::Value;

use super::case::{lowdim_companion, VerificationCase};
use super::report::{ObstructionCertificate, StageError, StageReport, VerificationReport};
use crate::character::{
    analyze_group, character_table, dimension_gap, min_faithful_real_degree, product_character_table,
    real_irrep_units, CharacterTable, EmbeddingReport,
};
use crate::error::{Error, Result};
use crate::group::{abelianization, construct_group, GroupElement, GroupModel, GroupOptions, GroupSpec, Perm};
use crate::simplicial::{
    fixed_subcomplex, homology, is_free_action, join, join_actions, link, make_action, ComplexSpec,
    SimplicialAction, SimplicialComplex, VertexLabel,
};

#[derive(Clone, Debug)]
pub struct VerifyOptions {
    pub group: GroupOptions,
    /// Homology 3-sphere to use instead of the bundled one.
    pub m3: Option<PathBuf>,
    /// The full kernel scan of the joined action runs when the group order is
    /// at most `enumeration_bound * action_scan_factor`.
    pub action_scan_factor: u64,
    pub timings: bool,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            group: GroupOptions::default(),
            m3: None,
            action_scan_factor: 1,
            timings: false,
        }
    }
}

impl VerifyOptions {
    pub fn load_m3(&self) -> Result<SimplicialComplex> {
        match &self.m3 {
            Some(p) => SimplicialComplex::from_file(p),
            None => Ok(SimplicialComplex::poincare_sphere()),
        }
    }
}

/// The loaded M3, or the load error again (errors are not `Clone`).
fn reuse(m3: &Result<Arc<SimplicialComplex>>, opts: &VerifyOptions) -> Result<Arc<SimplicialComplex>> {
    match m3 {
        Ok(k) => Ok(k.clone()),
        Err(_) => opts.load_m3().map(Arc::new),
    }
}

#[derive(Default)]
struct Artifacts(BTreeMap<String, Value>);

impl Artifacts {
    fn put(&mut self, key: &str, value: impl Serialize) {
        let v = serde_json::to_value(value).expect("artifacts serialize");
        self.0.insert(key.to_string(), v);
    }
}

struct Run {
    report: VerificationReport,
    timings: bool,
}

impl Run {
    fn stage(&mut self, id: &str, claim: impl Into<String>, f: impl FnOnce(&mut Artifacts) -> Result<bool>) {
        if self.report.failed_stage.is_some() {
            return;
        }
        let start = Instant::now();
        let mut art = Artifacts::default();
        let outcome = f(&mut art);
        let elapsed_ms = self.timings.then(|| start.elapsed().as_secs_f64() * 1e3);
        let (verdict, error) = match outcome {
            Ok(v) => (Some(v), None),
            Err(e) => {
                self.report.failed_stage = Some(id.to_string());
                let internal = e.is_internal();
                (None, Some(StageError { message: e.to_string(), internal }))
            }
        };
        self.report.stages.push(StageReport {
            id: id.to_string(),
            claim: claim.into(),
            verdict,
            artifacts: art.0,
            error,
            elapsed_ms,
        });
    }

    fn note(&mut self, text: impl Into<String>) {
        self.report.notes.push(text.into());
    }
}

/// Runs a verification case. Parameter errors are returned as `Err`; failures
/// inside a stage produce a partial report that names the stage.
pub fn verify(case: &VerificationCase, opts: &VerifyOptions) -> Result<VerificationReport> {
    case.validate(opts.group.allow_nonstandard)?;
    let mut run = Run {
        report: VerificationReport::new(case.clone()),
        timings: opts.timings,
    };
    match case.clone() {
        VerificationCase::Theorem { a, b, c, n } => theorem(&mut run, GroupSpec::milnor(a, b, c), n, opts),
        VerificationCase::Lowdim { d, a, b, c } => lowdim(&mut run, GroupSpec::milnor(a, b, c), d, opts)?,
        VerificationCase::Family { a, b, c, k } => family(&mut run, GroupSpec::milnor(a, b, c), k, opts),
        VerificationCase::JoinCheck { left, right } => join_check(&mut run, &left, &right),
        VerificationCase::FixedSet { a, b, c } => fixed_set(&mut run, GroupSpec::milnor(a, b, c), opts),
    }
    Ok(run.report.finish())
}

pub fn verify_theorem(a: u64, b: u64, c: u64, n: usize, opts: &VerifyOptions) -> Result<VerificationReport> {
    verify(&VerificationCase::Theorem { a, b, c, n }, opts)
}

pub fn verify_lowdim(d: u64, a: u64, b: u64, c: u64, opts: &VerifyOptions) -> Result<VerificationReport> {
    verify(&VerificationCase::Lowdim { d, a, b, c }, opts)
}

pub fn verify_family(a: u64, b: u64, c: u64, k: u64, opts: &VerifyOptions) -> Result<VerificationReport> {
    verify(&VerificationCase::Family { a, b, c, k }, opts)
}

fn group(spec: &GroupSpec, opts: &VerifyOptions) -> Result<Arc<GroupModel>> {
    Ok(Arc::new(construct_group(spec, &opts.group)?))
}

/// Table, minimal degree and certificate for the product of two analyzed groups.
fn product_obstruction(
    left: &Arc<CharacterTable>,
    right: &Arc<CharacterTable>,
    m: u64,
    art: &mut Artifacts,
) -> Result<bool> {
    let table = product_character_table(left.clone(), right.clone())?;
    let units = real_irrep_units(&table)?;
    let md = min_faithful_real_degree(&table.spec, &units, &table.classes)?;
    let report = EmbeddingReport::from_min_degree(md, m);
    art.put("group", table.spec.to_string());
    art.put("order", table.group_order());
    art.put("class_count", table.class_count());
    art.put("orthogonality_check", table.check);
    art.put("certificate", ObstructionCertificate::from_report(&report));
    Ok(report.is_obstructed())
}

fn obstruction_stage(analysis_table: &CharacterTable, md: &crate::character::MinDegreeResult, m: u64, art: &mut Artifacts) -> bool {
    let report = EmbeddingReport::from_min_degree(md.clone(), m);
    art.put("group", report.group.to_string());
    art.put("order", analysis_table.group_order());
    art.put("class_count", analysis_table.class_count());
    art.put("certificate", ObstructionCertificate::from_report(&report));
    report.is_obstructed()
}

fn profile_artifacts(art: &mut Artifacts, key: &str, k: &SimplicialComplex, d: usize) -> Result<bool> {
    let h = homology(k)?;
    let sphere = h.is_sphere_profile(d);
    art.put(key, &h);
    art.put(&format!("{key}_is_homology_{d}_sphere"), sphere);
    Ok(sphere)
}

/// Kernel of a joined action of `Q × H` in which `Q` acts trivially. Scans
/// the whole group when it is small enough, otherwise checks the factors.
fn joined_action_stage(
    joined: SimplicialAction,
    q_order: u64,
    opts: &VerifyOptions,
    art: &mut Artifacts,
) -> Result<bool> {
    let order = joined.group().order();
    art.put("group", joined.group().spec().to_string());
    art.put("order", order);
    art.put("vertex_count", joined.complex().vertex_count());
    let limit = opts.group.enumeration_bound.saturating_mul(opts.action_scan_factor);
    if order <= limit {
        let kernel = joined.kernel()?;
        let companion_trivial = kernel.iter().all(|g| match g {
            GroupElement::Pair(_, h) => joined
                .group()
                .factors()
                .is_some_and(|(_, hm)| **h == *hm.identity()),
            _ => false,
        });
        art.put("mode", "full");
        art.put("kernel_order", kernel.len());
        Ok(companion_trivial && kernel.len() as u64 == q_order)
    } else {
        let joined = Arc::new(joined);
        let q_part = joined.restrict_to_factor(true)?;
        let h_part = joined.restrict_to_factor(false)?;
        let q_trivial = q_part
            .generator_maps()?
            .iter()
            .all(|p| p.iter().enumerate().all(|(i, &v)| i as u32 == v));
        let h_faithful = h_part.is_faithful()?;
        art.put("mode", "reduced");
        art.put("first_factor_generators_trivial", q_trivial);
        art.put("second_factor_faithful", h_faithful);
        Ok(q_trivial && h_faithful)
    }
}

fn theorem(run: &mut Run, q: GroupSpec, n: usize, opts: &VerifyOptions) {
    let m = n as u64 + 3;
    let mut q_table: Option<Arc<CharacterTable>> = None;
    let mut a_table: Option<Arc<CharacterTable>> = None;
    let mut q_model: Option<Arc<GroupModel>> = None;

    run.stage("abelianization", format!("The abelianization of {q} is Z2 x Z2"), |art| {
        let g = group(&q, opts)?;
        let ab = abelianization(&g)?;
        art.put("group", q.to_string());
        art.put("order", g.order());
        art.put("invariant_factors", &ab.invariant_factors);
        q_model = Some(g);
        Ok(ab.invariant_factors == [2, 2])
    });
    run.stage("milnor_not_in_o4", format!("{q} is not a subgroup of O(4)"), |art| {
        let analysis = analyze_group(&q, &opts.group)?;
        let verdict = obstruction_stage(&analysis.table, &analysis.min_degree, 4, art);
        q_table = Some(Arc::new(analysis.table));
        Ok(verdict)
    });
    run.stage(
        "dimension_gap",
        format!(
            "Below degree {m}, the only nontrivial irreducible of A{n} is the standard one, of degree {}",
            n - 1
        ),
        |art| {
            let g = group(&GroupSpec::Alternating(n), opts)?;
            let t = character_table(&g)?;
            let gap = dimension_gap(&t, m);
            let standard = gap.len() == 1 && is_standard_row(&t, gap[0].0, n);
            art.put("group", t.spec.to_string());
            art.put("order", t.group_order());
            art.put("class_count", t.class_count());
            art.put("degrees", &t.degrees);
            art.put("gap", &gap);
            art.put("gap_row_is_permutation_character_minus_trivial", standard);
            a_table = Some(Arc::new(t));
            Ok(standard && gap[0].1 == n as u64 - 1)
        },
    );
    run.stage(
        "product_obstruction",
        format!("{q} x A{n} has no faithful real representation of dimension {m}"),
        |art| {
            let (Some(qt), Some(at)) = (&q_table, &a_table) else {
                return Err(Error::Internal("factor tables missing".into()));
            };
            product_obstruction(qt, at, m, art)
        },
    );
    let m3 = opts.load_m3().map(Arc::new);
    run.stage(
        "join_homology",
        format!("M3 is a homology 3-sphere and the join of M3 with the boundary of the {}-simplex is a homology {}-sphere", n - 1, n + 2),
        |art| {
            let m3 = reuse(&m3, opts)?;
            let ok_m3 = profile_artifacts(art, "m3_homology", &m3, 3)?;
            let k = join(&m3, &SimplicialComplex::sphere(n - 2));
            let ok_join = profile_artifacts(art, "join_homology", &k, n + 2)?;
            Ok(ok_m3 && ok_join)
        },
    );
    run.stage(
        "joined_action",
        format!("{q} x A{n} acts on the join, trivially on the M3 block, with kernel {q} x 1"),
        |art| {
            let m3 = reuse(&m3, opts)?;
            let qm = q_model.clone().ok_or_else(|| Error::Internal("group missing".into()))?;
            let an = group(&GroupSpec::Alternating(n), opts)?;
            let q_block = SimplicialAction::trivial(qm.clone(), m3).extend_left(an.clone());
            let a_block = SimplicialAction::simplex_permutation(an)?.extend_right(qm.clone());
            let joined = join_actions(&q_block, &a_block)?;
            joined_action_stage(joined, qm.order(), opts, art)
        },
    );
    run.note(format!(
        "A{n} acts on the simplex boundary by permuting vertices; this stands in for the standard linear action on the unit sphere."
    ));
    run.note("The group acting on the bundled M3 is modeled by the trivial action; only the kernel of the joined action is checked.");
    run.note("Join and suspension identities are certified at the level of integral homology only; local linearity is not examined.");
}

/// Row `r` equals the permutation character minus the trivial one.
fn is_standard_row(t: &CharacterTable, r: usize, n: usize) -> bool {
    t.classes.classes.iter().enumerate().all(|(c, class)| match &class.representative {
        GroupElement::Perm(p) => {
            let fixed = p.0.iter().enumerate().filter(|&(i, &v)| i == v as usize).count() as i64;
            p.degree() == n && t.value(r, c).as_integer() == Some(fixed - 1)
        }
        _ => false,
    })
}

fn lowdim(run: &mut Run, q: GroupSpec, d: u64, opts: &VerifyOptions) -> Result<()> {
    let h = lowdim_companion(d)?;
    let m = d + 1;
    let mut q_table = None;
    let mut h_table = None;
    run.stage("milnor_not_in_o4", format!("{q} is not a subgroup of O(4)"), |art| {
        let analysis = analyze_group(&q, &opts.group)?;
        let verdict = obstruction_stage(&analysis.table, &analysis.min_degree, 4, art);
        q_table = Some(Arc::new(analysis.table));
        Ok(verdict)
    });
    run.stage(
        "companion_representation",
        format!("{h} has a real irreducible representation of degree {}", d - 3),
        |art| {
            let t = character_table(&*group(&h, opts)?)?;
            let units = real_irrep_units(&t)?;
            let rows: Vec<usize> = units
                .iter()
                .filter(|u| u.indicator == 1 && u.real_degree == d - 3)
                .map(|u| u.rows[0])
                .collect();
            art.put("group", h.to_string());
            art.put("degrees", &t.degrees);
            art.put("real_unit_degrees", units.iter().map(|u| u.real_degree).collect::<Vec<_>>());
            art.put("matching_rows", &rows);
            h_table = Some(Arc::new(t));
            Ok(!rows.is_empty())
        },
    );
    run.stage(
        "product_obstruction",
        format!("{q} x {h} has no faithful real representation of dimension {m}"),
        |art| {
            let (Some(qt), Some(ht)) = (&q_table, &h_table) else {
                return Err(Error::Internal("factor tables missing".into()));
            };
            product_obstruction(qt, ht, m, art)
        },
    );
    Ok(())
}

/// Polygon used for the rotation action of `Z_k`: `k` vertices when `k >= 3`,
/// a square turned by half for `k = 2`, a fixed triangle for `k = 1`.
pub fn family_polygon_size(k: u64) -> usize {
    match k {
        1 => 3,
        2 => 4,
        k => k as usize,
    }
}

fn family(run: &mut Run, q: GroupSpec, k: u64, opts: &VerifyOptions) {
    let m = 6;
    let size = family_polygon_size(k);
    let mut q_table = None;
    let mut q_model = None;
    run.stage(
        "milnor_prerequisite",
        format!("{q} is not a subgroup of O(6) (premise taken from the literature)"),
        |art| {
            let analysis = analyze_group(&q, &opts.group)?;
            let verdict = obstruction_stage(&analysis.table, &analysis.min_degree, m, art);
            q_table = Some(Arc::new(analysis.table));
            q_model = Some(group(&q, opts)?);
            Ok(verdict)
        },
    );
    run.stage(
        "product_obstruction",
        format!("{q} x Z{k} has no faithful real representation of dimension {m}"),
        |art| {
            let qt = q_table.clone().ok_or_else(|| Error::Internal("table missing".into()))?;
            let kt = Arc::new(character_table(&*group(&GroupSpec::Cyclic(k), opts)?)?);
            product_obstruction(&qt, &kt, m, art)
        },
    );
    let m3 = opts.load_m3().map(Arc::new);
    run.stage(
        "join_homology",
        format!("The join of M3 with a {size}-gon is a homology 5-sphere"),
        |art| {
            let m3 = reuse(&m3, opts)?;
            let ok_m3 = profile_artifacts(art, "m3_homology", &m3, 3)?;
            let kj = join(&m3, &SimplicialComplex::polygon(size)?);
            let ok_join = profile_artifacts(art, "join_homology", &kj, 5)?;
            Ok(ok_m3 && ok_join)
        },
    );
    run.stage(
        "joined_action",
        format!("{q} x Z{k} acts on the join with Z{k} rotating the {size}-gon, with kernel {q} x 1"),
        |art| {
            let m3 = reuse(&m3, opts)?;
            let qm = q_model.clone().ok_or_else(|| Error::Internal("group missing".into()))?;
            let zk = group(&GroupSpec::Cyclic(k), opts)?;
            let q_block = SimplicialAction::trivial(qm.clone(), m3).extend_left(zk.clone());
            let rot = SimplicialAction::polygon_rotation(zk, size)?.extend_right(qm.clone());
            art.put("polygon_size", size);
            let joined = join_actions(&q_block, &rot)?;
            joined_action_stage(joined, qm.order(), opts, art)
        },
    );
    run.note("The O(6) premise for the Milnor group comes from the literature; the first stage recomputes it.");
    run.note("Freeness of the joined action is not asserted: the group acting on the bundled M3 is modeled by the trivial action.");
}

fn join_check(run: &mut Run, left: &ComplexSpec, right: &ComplexSpec) {
    let mut dims = None;
    let mut complexes = None;
    run.stage("factor_homology", "Both factors are homology spheres", |art| {
        let k = crate::simplicial::build_complex(left)?;
        let l = crate::simplicial::build_complex(right)?;
        let (a, b) = (k.dimension(), l.dimension());
        let ok_k = a >= 0 && profile_artifacts(art, "left_homology", &k, a as usize)?;
        let ok_l = b >= 0 && profile_artifacts(art, "right_homology", &l, b as usize)?;
        dims = Some((a, b));
        complexes = Some((k, l));
        Ok(ok_k && ok_l)
    });
    run.stage("join_homology", "The join is a homology sphere of dimension a + b + 1", |art| {
        let ((a, b), (k, l)) = (
            dims.ok_or_else(|| Error::Internal("dimensions missing".into()))?,
            complexes.ok_or_else(|| Error::Internal("complexes missing".into()))?,
        );
        let j = join(&k, &l);
        let d = a + b + 1;
        art.put("dimension", j.dimension());
        Ok(d >= 0 && j.dimension() == d && profile_artifacts(art, "join_homology", &j, d as usize)?)
    });
}

/// Octahedron on vertices `±e1, ±e2, ±e3`, labeled 0..5 in that order.
pub fn octahedron() -> SimplicialComplex {
    let mut facets = Vec::new();
    for x in 0..2u32 {
        for y in 2..4u32 {
            for z in 4..6u32 {
                facets.push(vec![VertexLabel::Index(x), VertexLabel::Index(y), VertexLabel::Index(z)]);
            }
        }
    }
    SimplicialComplex::from_facets(facets).expect("octahedron is valid")
}

/// Vertex map of the rotation induced by a permutation of the tetrahedron
/// `(1,1,1), (1,-1,-1), (-1,1,-1), (-1,-1,1)` on the octahedron.
pub fn tetrahedral_rotation(p: &Perm) -> Result<Vec<u32>> {
    const TET: [[i64; 3]; 4] = [[1, 1, 1], [1, -1, -1], [-1, 1, -1], [-1, -1, 1]];
    // e_j = (1/4) Σ_i TET[i][j] v_i
    if p.degree() != 4 || !p.is_even() {
        return Err(Error::Action(format!("{p} is not a rotation of the tetrahedron")));
    }
    let mut map = vec![0u32; 6];
    for j in 0..3 {
        let mut image = [0i64; 3];
        for i in 0..4 {
            let target = TET[p.0[i] as usize];
            for (x, t) in image.iter_mut().zip(target) {
                *x += TET[i][j] * t;
            }
        }
        let axis = image.iter().position(|&x| x != 0).expect("nonzero image");
        let sign = image[axis].signum();
        if image[axis].abs() != 4 || image.iter().filter(|&&x| x != 0).count() != 1 {
            return Err(Error::Internal("tetrahedral rotation is not a signed permutation".into()));
        }
        let (plus, minus) = (2 * axis as u32, 2 * axis as u32 + 1);
        map[2 * j] = if sign > 0 { plus } else { minus };
        map[2 * j + 1] = if sign > 0 { minus } else { plus };
    }
    Ok(map)
}

fn fixed_set(run: &mut Run, q: GroupSpec, opts: &VerifyOptions) {
    let m3 = opts.load_m3().map(Arc::new);
    let mut joined: Option<SimplicialAction> = None;
    let mut fixed: Option<SimplicialComplex> = None;
    let element = GroupElement::Perm(Perm::from_cycles(4, &[&[1, 2], &[3, 4]]));
    run.stage(
        "joined_action",
        format!("{q} x A4 acts on the join of M3 with the octahedron, {q} trivially and A4 by rotations"),
        |art| {
            let m3 = reuse(&m3, opts)?;
            let qm = group(&q, opts)?;
            let a4 = group(&GroupSpec::Alternating(4), opts)?;
            let maps = a4
                .generators()
                .iter()
                .map(|g| match g {
                    GroupElement::Perm(p) => tetrahedral_rotation(p),
                    _ => Err(Error::Internal("A4 generator is not a permutation".into())),
                })
                .collect::<Result<Vec<_>>>()?;
            let rot = make_action(a4.clone(), Arc::new(octahedron()), maps)?;
            let a = SimplicialAction::trivial(qm.clone(), m3).extend_left(a4);
            let j = join_actions(&a, &rot.extend_right(qm))?;
            let faithful_companion = Arc::new(j.clone()).restrict_to_factor(false)?.is_faithful()?;
            art.put("group", j.group().spec().to_string());
            art.put("vertex_count", j.complex().vertex_count());
            art.put("companion_faithful", faithful_companion);
            joined = Some(j);
            Ok(faithful_companion)
        },
    );
    run.stage(
        "double_cone",
        "An element trivial on the M3 block fixing exactly two companion vertices has fixed set M3 * S0",
        |art| {
            let (Some(j), Ok(m3)) = (&joined, &m3) else {
                return Err(Error::Internal("joined action missing".into()));
            };
            let qm = j.group().factors().map(|(g, _)| g.clone()).expect("product group");
            let g = GroupElement::pair(qm.identity().clone(), element.clone());
            let fix = fixed_subcomplex(j, &g)?;
            let companion: Vec<VertexLabel> = fix
                .vertices()
                .iter()
                .filter_map(|v| v.untag_right().cloned())
                .collect();
            let m3_block_fixed = fix.vertices().iter().filter(|v| v.untag_left().is_some()).count()
                == m3.vertex_count();
            let expected = join(m3, &SimplicialComplex::points(2)?);
            let iso = companion.len() == 2
                && fix.isomorphic_along(&expected, |v| match v {
                    VertexLabel::Left(_) => Some(v.clone()),
                    VertexLabel::Right(inner) => companion
                        .iter()
                        .position(|c| c == &**inner)
                        .map(|i| VertexLabel::Index(i as u32).right()),
                    _ => None,
                });
            art.put("element", g.to_string());
            art.put("fixed_companion_vertices", companion.iter().map(ToString::to_string).collect::<Vec<_>>());
            art.put("fixed_f_vector", fix.f_vector());
            let suspended = profile_artifacts(art, "fixed_homology", &fix, 4)?;
            art.put("isomorphic_to_double_cone", iso);
            fixed = Some(fix);
            Ok(m3_block_fixed && iso && suspended)
        },
    );
    run.stage(
        "cone_point_links",
        "The links of the two cone points in the fixed set are copies of M3",
        |art| {
            let (Some(fix), Ok(m3)) = (&fixed, &m3) else {
                return Err(Error::Internal("fixed set missing".into()));
            };
            let mut all = true;
            let mut f_vectors = Vec::new();
            for apex in fix.vertices().iter().filter(|v| v.untag_right().is_some()) {
                let l = link(fix, std::slice::from_ref(apex))?;
                f_vectors.push(l.f_vector());
                all &= l.isomorphic_along(m3, |v| v.untag_left().cloned());
            }
            art.put("link_f_vectors", &f_vectors);
            Ok(all && f_vectors.len() == 2)
        },
    );
    run.stage("rotation_free", "Rotations of polygons by Z_k are free actions", |art| {
        let mut results = BTreeMap::new();
        for k in [2u64, 3, 5] {
            for mult in [1usize, 2] {
                let size = k as usize * mult;
                if size < 3 {
                    continue;
                }
                let a = SimplicialAction::polygon_rotation(group(&GroupSpec::Cyclic(k), opts)?, size)?;
                results.insert(format!("Z{k} on {size}-gon"), is_free_action(&a)?);
            }
        }
        let c2 = group(&GroupSpec::Cyclic(2), opts)?;
        let swap = make_action(c2.clone(), Arc::new(SimplicialComplex::points(2)?), vec![vec![1, 0]])?;
        let half = SimplicialAction::polygon_rotation(c2, 4)?;
        results.insert("Z2 diagonal on S0 * 4-gon".into(), is_free_action(&join_actions(&swap, &half)?)?);
        let all = results.values().all(|&v| v);
        art.put("free", &results);
        Ok(all)
    });
    run.stage("trivial_not_free", "Trivial actions of nontrivial groups are not free", |art| {
        let m3 = reuse(&m3, opts)?;
        let mut results = BTreeMap::new();
        let c3 = group(&GroupSpec::Cyclic(3), opts)?;
        let t = SimplicialAction::trivial(c3, Arc::new(SimplicialComplex::polygon(3)?));
        results.insert("Z3 on 3-gon".to_string(), is_free_action(&t)?);
        let t = SimplicialAction::trivial(group(&q, opts)?, m3);
        results.insert(format!("{q} on M3"), is_free_action(&t)?);
        let none = results.values().all(|&v| !v);
        art.put("free", &results);
        Ok(none)
    });
    run.note("A4 rotating the octahedron is a scaled-down companion for the alternating group acting on a sphere.");
}
