use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Bundled 16-vertex triangulated homology 3-sphere (Poincaré sphere).
pub const POINCARE16_FACETS: &str = include_str!("../../data/poincare16.facets");

/// A vertex label. Joins tag each side, so labels stay unique and the
/// original vertex can always be recovered.
///
/// The derived order is the global vertex order used for orientations.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum VertexLabel {
    Index(u32),
    Name(String),
    Left(Box<VertexLabel>),
    Right(Box<VertexLabel>),
}

impl VertexLabel {
    /// Numeric tokens without leading zeros become indices, anything else a name.
    pub fn from_token(token: &str) -> Self {
        let canonical = token == "0" || (!token.starts_with('0') && !token.is_empty());
        match token.parse::<u32>() {
            Ok(n) if canonical => VertexLabel::Index(n),
            _ => VertexLabel::Name(token.to_string()),
        }
    }

    pub fn left(self) -> Self {
        VertexLabel::Left(Box::new(self))
    }

    pub fn right(self) -> Self {
        VertexLabel::Right(Box::new(self))
    }

    /// The inner label if this is a left-tagged vertex.
    pub fn untag_left(&self) -> Option<&VertexLabel> {
        match self {
            VertexLabel::Left(v) => Some(v),
            _ => None,
        }
    }

    pub fn untag_right(&self) -> Option<&VertexLabel> {
        match self {
            VertexLabel::Right(v) => Some(v),
            _ => None,
        }
    }
}

impl fmt::Display for VertexLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VertexLabel::Index(n) => write!(f, "{n}"),
            VertexLabel::Name(s) => write!(f, "{s}"),
            VertexLabel::Left(v) => write!(f, "L.{v}"),
            VertexLabel::Right(v) => write!(f, "R.{v}"),
        }
    }
}

/// Finite abstract simplicial complex given by its facets.
///
/// Vertices are stored in label order; a simplex is a sorted list of vertex
/// indices into that order.
#[derive(Clone, Debug)]
pub struct SimplicialComplex {
    vertices: Vec<VertexLabel>,
    facets: Vec<Vec<u32>>,
    faces: OnceLock<Vec<Vec<Vec<u32>>>>,
}

impl PartialEq for SimplicialComplex {
    fn eq(&self, other: &Self) -> bool {
        self.vertices == other.vertices && self.facets == other.facets
    }
}

impl Eq for SimplicialComplex {}

impl SimplicialComplex {
    /// The void complex (no simplices at all); neutral for joins.
    pub fn void() -> Self {
        SimplicialComplex {
            vertices: Vec::new(),
            facets: Vec::new(),
            faces: OnceLock::new(),
        }
    }

    /// Validated complex from facets given as label lists.
    pub fn from_facets(facets: Vec<Vec<VertexLabel>>) -> Result<Self> {
        let mut labels: BTreeSet<VertexLabel> = BTreeSet::new();
        for (k, f) in facets.iter().enumerate() {
            if f.is_empty() {
                return Err(Error::Complex(format!("facet {k} is empty")));
            }
            let distinct: BTreeSet<&VertexLabel> = f.iter().collect();
            if distinct.len() != f.len() {
                return Err(Error::Complex(format!("facet {k} repeats a vertex")));
            }
            labels.extend(f.iter().cloned());
        }
        let vertices: Vec<VertexLabel> = labels.into_iter().collect();
        let pos: HashMap<&VertexLabel, u32> =
            vertices.iter().enumerate().map(|(i, v)| (v, i as u32)).collect();
        let indexed: Vec<Vec<u32>> = facets
            .iter()
            .map(|f| {
                let mut s: Vec<u32> = f.iter().map(|v| pos[v]).collect();
                s.sort_unstable();
                s
            })
            .collect();
        check_no_containment(&indexed, &vertices)?;
        let mut facets = indexed;
        facets.sort();
        Ok(SimplicialComplex {
            vertices,
            facets,
            faces: OnceLock::new(),
        })
    }

    /// Complex generated by arbitrary faces: keeps the maximal ones and drops
    /// vertices that no face uses.
    pub(crate) fn from_faces(vertices: &[VertexLabel], faces: Vec<Vec<u32>>) -> Self {
        let mut faces: Vec<Vec<u32>> = faces.into_iter().filter(|f| !f.is_empty()).collect();
        for f in faces.iter_mut() {
            f.sort_unstable();
            f.dedup();
        }
        faces.sort_by(|a, b| b.len().cmp(&a.len()).then_with(|| a.cmp(b)));
        faces.dedup();
        let mut maximal: Vec<Vec<u32>> = Vec::new();
        for f in faces {
            if !maximal.iter().any(|m| is_subset(&f, m)) {
                maximal.push(f);
            }
        }
        let used: BTreeSet<u32> = maximal.iter().flatten().copied().collect();
        let remap: HashMap<u32, u32> = used.iter().enumerate().map(|(i, &v)| (v, i as u32)).collect();
        let new_vertices = used.iter().map(|&v| vertices[v as usize].clone()).collect();
        let mut facets: Vec<Vec<u32>> = maximal
            .into_iter()
            .map(|f| f.into_iter().map(|v| remap[&v]).collect())
            .collect();
        facets.sort();
        SimplicialComplex {
            vertices: new_vertices,
            facets,
            faces: OnceLock::new(),
        }
    }

    /// `∂Δ^{n+1}`: `n + 2` vertices, all `(n+1)`-subsets as facets.
    pub fn sphere(n: usize) -> Self {
        let m = n as u32 + 2;
        let facets = (0..m)
            .map(|skip| (0..m).filter(|&v| v != skip).collect())
            .collect();
        Self::indexed(m, facets)
    }

    /// Cycle on `k >= 3` vertices.
    pub fn polygon(k: usize) -> Result<Self> {
        if k < 3 {
            return Err(Error::Complex(format!("polygon needs at least 3 vertices, got {k}")));
        }
        let k = k as u32;
        let facets = (0..k)
            .map(|i| {
                let mut e = vec![i, (i + 1) % k];
                e.sort_unstable();
                e
            })
            .collect();
        Ok(Self::indexed(k, facets))
    }

    /// `m` isolated vertices.
    pub fn points(m: usize) -> Result<Self> {
        if m == 0 {
            return Err(Error::Complex("points needs at least one vertex".into()));
        }
        let m = m as u32;
        Ok(Self::indexed(m, (0..m).map(|i| vec![i]).collect()))
    }

    fn indexed(n: u32, mut facets: Vec<Vec<u32>>) -> Self {
        facets.sort();
        SimplicialComplex {
            vertices: (0..n).map(VertexLabel::Index).collect(),
            facets,
            faces: OnceLock::new(),
        }
    }

    /// Parses the facet file format: one facet per line, whitespace-separated
    /// vertex tokens, `#` starts a comment, blank lines are skipped.
    pub fn parse_facets(text: &str, path: &Path) -> Result<Self> {
        let mut facets = Vec::new();
        let mut lines = Vec::new();
        for (n, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("");
            let tokens: Vec<VertexLabel> = line.split_whitespace().map(VertexLabel::from_token).collect();
            if tokens.is_empty() {
                continue;
            }
            let distinct: BTreeSet<&VertexLabel> = tokens.iter().collect();
            if distinct.len() != tokens.len() {
                return Err(Error::FacetFile {
                    path: path.to_path_buf(),
                    line: n + 1,
                    message: "facet repeats a vertex".into(),
                });
            }
            facets.push(tokens);
            lines.push(n + 1);
        }
        if facets.is_empty() {
            return Err(Error::FacetFile {
                path: path.to_path_buf(),
                line: 0,
                message: "no facets".into(),
            });
        }
        Self::from_facets(facets).map_err(|e| match e {
            Error::Complex(msg) => {
                // report the first facet mentioned in the message
                let line = msg
                    .split_whitespace()
                    .find_map(|w| w.trim_matches(|c: char| !c.is_ascii_digit()).parse::<usize>().ok())
                    .and_then(|k| lines.get(k).copied())
                    .unwrap_or(0);
                Error::FacetFile {
                    path: path.to_path_buf(),
                    line,
                    message: msg,
                }
            }
            other => other,
        })
    }

    pub fn from_file(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::FacetFile {
            path: path.to_path_buf(),
            line: 0,
            message: e.to_string(),
        })?;
        Self::parse_facets(&text, path)
    }

    /// The bundled Poincaré homology sphere.
    pub fn poincare_sphere() -> Self {
        Self::parse_facets(POINCARE16_FACETS, Path::new("poincare16.facets"))
            .expect("bundled triangulation is valid")
    }

    pub fn vertices(&self) -> &[VertexLabel] {
        &self.vertices
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn vertex_index(&self, label: &VertexLabel) -> Option<u32> {
        self.vertices.binary_search(label).ok().map(|i| i as u32)
    }

    pub fn facets(&self) -> &[Vec<u32>] {
        &self.facets
    }

    /// Facets as label lists.
    pub fn facet_labels(&self) -> Vec<Vec<VertexLabel>> {
        self.facets
            .iter()
            .map(|f| f.iter().map(|&v| self.vertices[v as usize].clone()).collect())
            .collect()
    }

    pub fn is_void(&self) -> bool {
        self.facets.is_empty()
    }

    /// Dimension; -1 for the void complex.
    pub fn dimension(&self) -> i64 {
        self.facets.iter().map(|f| f.len() as i64 - 1).max().unwrap_or(-1)
    }

    /// All nonempty faces, grouped by dimension and sorted.
    pub fn faces(&self) -> &[Vec<Vec<u32>>] {
        self.faces.get_or_init(|| {
            let dim = self.dimension();
            if dim < 0 {
                return Vec::new();
            }
            let mut by_dim: Vec<BTreeSet<Vec<u32>>> = vec![BTreeSet::new(); dim as usize + 1];
            for f in &self.facets {
                let n = f.len();
                for mask in 1u64..(1u64 << n) {
                    let face: Vec<u32> = (0..n).filter(|&i| mask >> i & 1 == 1).map(|i| f[i]).collect();
                    by_dim[face.len() - 1].insert(face);
                }
            }
            by_dim.into_iter().map(|s| s.into_iter().collect()).collect()
        })
    }

    pub fn f_vector(&self) -> Vec<u64> {
        self.faces().iter().map(|d| d.len() as u64).collect()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.f_vector()
            .iter()
            .enumerate()
            .map(|(k, &n)| if k % 2 == 0 { n as i64 } else { -(n as i64) })
            .sum()
    }

    /// True if the sorted vertex set is a face.
    pub fn contains_face(&self, simplex: &[u32]) -> bool {
        self.facets.iter().any(|f| is_subset(simplex, f))
    }

    /// Simplex from labels, sorted; error if a label is unknown.
    pub fn simplex(&self, labels: &[VertexLabel]) -> Result<Vec<u32>> {
        let mut s = labels
            .iter()
            .map(|l| {
                self.vertex_index(l)
                    .ok_or_else(|| Error::Complex(format!("vertex {l} is not in the complex")))
            })
            .collect::<Result<Vec<u32>>>()?;
        s.sort_unstable();
        s.dedup();
        Ok(s)
    }

    /// Relabels vertices; the map must be injective on this complex's labels.
    pub fn relabel(&self, f: impl Fn(&VertexLabel) -> VertexLabel) -> Result<Self> {
        let facets: Vec<Vec<VertexLabel>> = self
            .facet_labels()
            .into_iter()
            .map(|fc| fc.iter().map(&f).collect())
            .collect();
        let out = Self::from_facets(facets)?;
        if out.vertex_count() != self.vertex_count() {
            return Err(Error::Complex("relabeling is not injective".into()));
        }
        Ok(out)
    }

    /// Whether `map` (defined on this complex's labels) carries its facets
    /// exactly onto the facets of `other`.
    pub fn isomorphic_along(
        &self,
        other: &SimplicialComplex,
        map: impl Fn(&VertexLabel) -> Option<VertexLabel>,
    ) -> bool {
        let mut mapped = Vec::with_capacity(self.facets.len());
        for f in self.facet_labels() {
            let Some(image) = f.iter().map(&map).collect::<Option<Vec<VertexLabel>>>() else {
                return false;
            };
            let Ok(mut s) = other.simplex(&image) else {
                return false;
            };
            if s.len() != f.len() {
                return false;
            }
            s.sort_unstable();
            mapped.push(s);
        }
        mapped.sort();
        mapped == other.facets
    }
}

fn is_subset(a: &[u32], b: &[u32]) -> bool {
    // both sorted
    let mut j = 0;
    for &x in a {
        while j < b.len() && b[j] < x {
            j += 1;
        }
        if j == b.len() || b[j] != x {
            return false;
        }
        j += 1;
    }
    true
}

fn check_no_containment(facets: &[Vec<u32>], vertices: &[VertexLabel]) -> Result<()> {
    let show = |f: &[u32]| -> String {
        let names: Vec<String> = f.iter().map(|&v| vertices[v as usize].to_string()).collect();
        format!("{{{}}}", names.join(" "))
    };
    for i in 0..facets.len() {
        for j in 0..facets.len() {
            if i != j && is_subset(&facets[i], &facets[j]) && (facets[i].len() < facets[j].len() || i < j) {
                return Err(Error::Complex(format!(
                    "facet {i} {} is contained in facet {j} {}",
                    show(&facets[i]),
                    show(&facets[j])
                )));
            }
        }
    }
    Ok(())
}

/// Join: facets `σ ⊔ τ`, left vertices tagged `Left`, right ones `Right`.
/// Joining with the void complex returns the other complex unchanged.
pub fn join(k: &SimplicialComplex, l: &SimplicialComplex) -> SimplicialComplex {
    if k.is_void() {
        return l.clone();
    }
    if l.is_void() {
        return k.clone();
    }
    // Left(..) < Right(..), so left vertices keep their indices and right ones shift
    let shift = k.vertex_count() as u32;
    let vertices: Vec<VertexLabel> = k
        .vertices
        .iter()
        .cloned()
        .map(VertexLabel::left)
        .chain(l.vertices.iter().cloned().map(VertexLabel::right))
        .collect();
    let mut facets = Vec::with_capacity(k.facets.len() * l.facets.len());
    for s in &k.facets {
        for t in &l.facets {
            let mut f = s.clone();
            f.extend(t.iter().map(|&v| v + shift));
            facets.push(f);
        }
    }
    facets.sort();
    SimplicialComplex {
        vertices,
        facets,
        faces: OnceLock::new(),
    }
}

/// Join with two points.
pub fn suspension(k: &SimplicialComplex) -> SimplicialComplex {
    join(k, &SimplicialComplex::points(2).expect("two points"))
}

/// Faces `τ` disjoint from `σ` with `τ ∪ σ` a face.
pub fn link(k: &SimplicialComplex, sigma: &[VertexLabel]) -> Result<SimplicialComplex> {
    let s = k.simplex(sigma)?;
    if s.is_empty() || !k.contains_face(&s) {
        let names: Vec<String> = sigma.iter().map(ToString::to_string).collect();
        return Err(Error::Complex(format!("{{{}}} is not a face", names.join(" "))));
    }
    let faces = k
        .facets
        .iter()
        .filter(|f| is_subset(&s, f))
        .map(|f| f.iter().copied().filter(|v| !s.contains(v)).collect())
        .collect();
    Ok(SimplicialComplex::from_faces(&k.vertices, faces))
}

/// Textual complex description used by the CLI:
/// `sphere(n)`, `polygon(k)`, `points(m)`, `m3`, `file(PATH)`, `facets(a b c; b c d)`,
/// `join(X, Y)`, `suspension(X)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ComplexSpec {
    Sphere(usize),
    Polygon(usize),
    Points(usize),
    /// The bundled homology 3-sphere.
    M3,
    File(PathBuf),
    Facets(Vec<Vec<String>>),
    Join(Box<ComplexSpec>, Box<ComplexSpec>),
    Suspension(Box<ComplexSpec>),
}

pub fn build_complex(spec: &ComplexSpec) -> Result<SimplicialComplex> {
    Ok(match spec {
        ComplexSpec::Sphere(n) => SimplicialComplex::sphere(*n),
        ComplexSpec::Polygon(k) => SimplicialComplex::polygon(*k)?,
        ComplexSpec::Points(m) => SimplicialComplex::points(*m)?,
        ComplexSpec::M3 => SimplicialComplex::poincare_sphere(),
        ComplexSpec::File(p) => SimplicialComplex::from_file(p)?,
        ComplexSpec::Facets(f) => {
            if f.is_empty() {
                return Err(Error::Complex("no facets given".into()));
            }
            SimplicialComplex::from_facets(
                f.iter()
                    .map(|fc| fc.iter().map(|t| VertexLabel::from_token(t)).collect())
                    .collect(),
            )?
        }
        ComplexSpec::Join(a, b) => join(&build_complex(a)?, &build_complex(b)?),
        ComplexSpec::Suspension(a) => suspension(&build_complex(a)?),
    })
}

impl FromStr for ComplexSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (spec, rest) = parse_spec(s.trim(), s)?;
        if !rest.trim().is_empty() {
            return Err(Error::parse("complex spec", s, format!("trailing input {:?}", rest.trim())));
        }
        Ok(spec)
    }
}

fn parse_spec<'a>(s: &'a str, original: &str) -> Result<(ComplexSpec, &'a str)> {
    let fail = |reason: String| Error::parse("complex spec", original, reason);
    let s = s.trim_start();
    let name_len = s
        .find(|c: char| !c.is_ascii_alphanumeric() && c != '_')
        .unwrap_or(s.len());
    let name = s[..name_len].to_ascii_lowercase();
    let rest = s[name_len..].trim_start();
    if matches!(name.as_str(), "m3" | "poincare" | "poincare16") {
        return Ok((ComplexSpec::M3, rest));
    }
    let Some(body) = rest.strip_prefix('(') else {
        return Err(fail(format!("expected '(' after {name:?}")));
    };
    let close_of = |body: &str| -> Result<usize> {
        let mut depth = 0usize;
        for (i, c) in body.char_indices() {
            match c {
                '(' => depth += 1,
                ')' if depth == 0 => return Ok(i),
                ')' => depth -= 1,
                _ => {}
            }
        }
        Err(fail("unbalanced parentheses".into()))
    };
    let number = |text: &str| -> Result<usize> {
        text.trim()
            .parse()
            .map_err(|_| fail(format!("expected a number, got {:?}", text.trim())))
    };
    match name.as_str() {
        "sphere" | "polygon" | "points" | "file" | "facets" => {
            let end = close_of(body)?;
            let inner = &body[..end];
            let after = &body[end + 1..];
            let spec = match name.as_str() {
                "sphere" => ComplexSpec::Sphere(number(inner)?),
                "polygon" => ComplexSpec::Polygon(number(inner)?),
                "points" => ComplexSpec::Points(number(inner)?),
                "file" => ComplexSpec::File(PathBuf::from(inner.trim())),
                _ => ComplexSpec::Facets(
                    inner
                        .split(';')
                        .map(|f| f.split_whitespace().map(str::to_string).collect::<Vec<_>>())
                        .filter(|f| !f.is_empty())
                        .collect(),
                ),
            };
            Ok((spec, after))
        }
        "join" => {
            let (a, rest) = parse_spec(body, original)?;
            let rest = rest
                .trim_start()
                .strip_prefix(',')
                .ok_or_else(|| fail("expected ',' in join".into()))?;
            let (b, rest) = parse_spec(rest, original)?;
            let rest = rest
                .trim_start()
                .strip_prefix(')')
                .ok_or_else(|| fail("expected ')' after join".into()))?;
            Ok((ComplexSpec::Join(Box::new(a), Box::new(b)), rest))
        }
        "suspension" | "susp" => {
            let (a, rest) = parse_spec(body, original)?;
            let rest = rest
                .trim_start()
                .strip_prefix(')')
                .ok_or_else(|| fail("expected ')' after suspension".into()))?;
            Ok((ComplexSpec::Suspension(Box::new(a)), rest))
        }
        _ => Err(fail(format!("unknown complex {name:?}"))),
    }
}

impl fmt::Display for ComplexSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ComplexSpec::Sphere(n) => write!(f, "sphere({n})"),
            ComplexSpec::Polygon(k) => write!(f, "polygon({k})"),
            ComplexSpec::Points(m) => write!(f, "points({m})"),
            ComplexSpec::M3 => write!(f, "m3"),
            ComplexSpec::File(p) => write!(f, "file({})", p.display()),
            ComplexSpec::Facets(fs) => {
                let parts: Vec<String> = fs.iter().map(|x| x.join(" ")).collect();
                write!(f, "facets({})", parts.join("; "))
            }
            ComplexSpec::Join(a, b) => write!(f, "join({a},{b})"),
            ComplexSpec::Suspension(a) => write!(f, "suspension({a})"),
        }
    }
}

/// Writes facets in the facet file format.
pub fn to_facet_text(k: &SimplicialComplex) -> String {
    let mut out = String::new();
    for f in k.facet_labels() {
        let names: Vec<String> = f.iter().map(ToString::to_string).collect();
        out.push_str(&names.join(" "));
        out.push('\n');
    }
    out
}
