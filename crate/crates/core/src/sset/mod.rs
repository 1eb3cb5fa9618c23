//! Finite augmented simplicial sets in Eilenberg–Zilber normal form.
//!
//! A set is presented by its non-degenerate generators, graded from dimension
//! `-1` (the augmentation layer) upwards, together with the faces of each
//! generator. Every simplex, degenerate or not, is handled as a
//! [`SimplexRef`]: a surjection in `Δ` applied to a generator. The presheaf
//! action [`AugSimplicialSet::act`] renormalizes into that form, so equality
//! of simplices is structural equality of their handles.
//!
//! Faces of a vertex are its augmentation value, which makes the dimension
//! `-1` layer an ordinary grading level: the coherence condition `q d0 = q d1`
//! is the `d0 d1 = d0 d0` simplicial identity on an edge.

use std::collections::{HashMap, HashSet};
use std::fmt;

use petgraph::unionfind::UnionFind;
use thiserror::Error;

use crate::ordinal::{DegeneracyOp, MonotoneMap, Ordinal, OrdinalError};

mod build;
mod maps;
pub mod ssf;

pub use build::{
    boundary, canonical_augmentation, dec, disjoint_union, empty, quotient_collapse, s0, sigma,
    standard_simplex, trivial_augmentation,
};
pub use maps::{
    are_isomorphic, count_maps, enumerate_maps, internal_hom_level, MapViolation, SimplicialMap,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SsetError {
    #[error("generator {name:?}: {msg}")]
    Malformed { name: String, msg: String },
    #[error("generator name {0:?} is used twice")]
    DuplicateName(String),
    #[error("invalid generator name {0:?}")]
    BadName(String),
    #[error("cannot act on a {simplex_dim}-simplex by a map into [{map_dst}]")]
    ActionDomain { simplex_dim: i32, map_dst: i32 },
    #[error("collapsed set is not face-closed: face {face} of {name:?} leaves it")]
    NotFaceClosed { name: String, face: usize },
    #[error("collapsed set has no vertex")]
    NoVertex,
    #[error("{0}")]
    Argument(String),
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("{name} fails validation: {summary}")]
    Invalid { name: String, summary: String },
    #[error(transparent)]
    Ordinal(#[from] OrdinalError),
}

/// A non-degenerate generator, addressed by dimension and position within
/// its layer.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Gen {
    pub dim: i32,
    pub index: usize,
}

impl Gen {
    pub fn new(dim: i32, index: usize) -> Self {
        Gen { dim, index }
    }
}

/// A simplex in Eilenberg–Zilber form: `op` applied to the generator `gen`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SimplexRef {
    pub op: DegeneracyOp,
    pub gen: Gen,
}

impl SimplexRef {
    /// The generator itself, as a non-degenerate simplex.
    pub fn nondegenerate(gen: Gen) -> Self {
        SimplexRef {
            op: DegeneracyOp::identity(Ordinal::new(gen.dim).expect("generator dim >= -1")),
            gen,
        }
    }

    pub fn new(op: DegeneracyOp, gen: Gen) -> Result<Self, SsetError> {
        if op.dst().n() != gen.dim {
            return Err(SsetError::Argument(format!(
                "operator {op} does not land in dimension {}",
                gen.dim
            )));
        }
        Ok(SimplexRef { op, gen })
    }

    pub fn dim(&self) -> i32 {
        self.op.src().n()
    }

    pub fn is_degenerate(&self) -> bool {
        !self.op.is_identity()
    }
}

/// Input record for one generator when assembling a set by hand.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GenSpec {
    pub name: String,
    pub faces: Vec<SimplexRef>,
}

impl GenSpec {
    pub fn new(name: impl Into<String>, faces: Vec<SimplexRef>) -> Self {
        GenSpec {
            name: name.into(),
            faces,
        }
    }
}

/// How the augmentation layer relates to the vertices.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AugKind {
    /// A single augmentation element.
    Trivial,
    /// The augmentation is the quotient onto connected components.
    Canonical,
    Explicit,
}

impl fmt::Display for AugKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            AugKind::Trivial => "trivial",
            AugKind::Canonical => "canonical",
            AugKind::Explicit => "explicit",
        })
    }
}

/// A finite augmented simplicial set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AugSimplicialSet {
    name: String,
    /// `layers[d + 1]` holds the generators of dimension `d`.
    layers: Vec<Vec<GenSpec>>,
    by_name: HashMap<String, Gen>,
}

pub(crate) fn valid_name(name: &str) -> bool {
    !name.is_empty() && !name.chars().any(char::is_whitespace)
}

/// `base`, or `base` with primes appended until it avoids `taken`.
pub(crate) fn fresh_name(base: &str, taken: &HashSet<&str>) -> String {
    let mut name = base.to_string();
    while taken.contains(name.as_str()) {
        name.push('\'');
    }
    name
}

impl AugSimplicialSet {
    /// Assembles a set from its generator layers (`layers[0]` is dimension
    /// `-1`). Checks shape only: references, face counts and dimensions,
    /// names. The simplicial identities are checked by [`Self::validate`].
    pub fn from_layers(
        name: impl Into<String>,
        mut layers: Vec<Vec<GenSpec>>,
    ) -> Result<Self, SsetError> {
        if layers.is_empty() {
            layers.push(Vec::new());
        }
        while layers.len() > 1 && layers.last().is_some_and(Vec::is_empty) {
            layers.pop();
        }
        let mut by_name = HashMap::new();
        for (slot, layer) in layers.iter().enumerate() {
            let dim = slot as i32 - 1;
            for (index, spec) in layer.iter().enumerate() {
                if !valid_name(&spec.name) {
                    return Err(SsetError::BadName(spec.name.clone()));
                }
                if by_name
                    .insert(spec.name.clone(), Gen::new(dim, index))
                    .is_some()
                {
                    return Err(SsetError::DuplicateName(spec.name.clone()));
                }
            }
        }
        for (slot, layer) in layers.iter().enumerate() {
            let dim = slot as i32 - 1;
            for spec in layer {
                let malformed = |msg: String| SsetError::Malformed {
                    name: spec.name.clone(),
                    msg,
                };
                let expected = if dim < 0 { 0 } else { dim as usize + 1 };
                if spec.faces.len() != expected {
                    return Err(malformed(format!(
                        "has {} faces, expected {expected}",
                        spec.faces.len()
                    )));
                }
                for (i, face) in spec.faces.iter().enumerate() {
                    if face.dim() != dim - 1 {
                        return Err(malformed(format!("face {i} has dimension {}", face.dim())));
                    }
                    if face.op.dst().n() != face.gen.dim {
                        return Err(malformed(format!("face {i} has a mismatched operator")));
                    }
                    let exists = layers
                        .get((face.gen.dim + 1) as usize)
                        .is_some_and(|l| face.gen.index < l.len());
                    if !exists {
                        return Err(malformed(format!(
                            "face {i} references a missing generator"
                        )));
                    }
                }
            }
        }
        Ok(AugSimplicialSet {
            name: name.into(),
            layers,
            by_name,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    /// Highest dimension carrying a generator (`-1` when only the
    /// augmentation layer is populated, or nothing at all).
    pub fn topdim(&self) -> i32 {
        self.layers.len() as i32 - 2
    }

    fn layer(&self, dim: i32) -> &[GenSpec] {
        if dim < -1 {
            return &[];
        }
        self.layers
            .get((dim + 1) as usize)
            .map_or(&[], Vec::as_slice)
    }

    /// Number of generators (non-degenerate simplices) in `dim`.
    pub fn count(&self, dim: i32) -> usize {
        self.layer(dim).len()
    }

    pub fn gens(&self, dim: i32) -> impl Iterator<Item = Gen> + '_ {
        (0..self.count(dim)).map(move |i| Gen::new(dim, i))
    }

    /// All generators, ordered by `(dim, index)`.
    pub fn all_gens(&self) -> impl Iterator<Item = Gen> + '_ {
        (-1..=self.topdim()).flat_map(move |d| self.gens(d))
    }

    pub fn gen_name(&self, g: Gen) -> &str {
        &self.layer(g.dim)[g.index].name
    }

    pub fn find(&self, name: &str) -> Option<Gen> {
        self.by_name.get(name).copied()
    }

    pub fn faces(&self, g: Gen) -> &[SimplexRef] {
        &self.layer(g.dim)[g.index].faces
    }

    /// The augmentation value of a vertex.
    pub fn aug_of(&self, vertex: Gen) -> Gen {
        assert_eq!(vertex.dim, 0, "augmentation is defined on vertices");
        self.faces(vertex)[0].gen
    }

    pub fn to_layers(&self) -> Vec<Vec<GenSpec>> {
        self.layers.clone()
    }

    /// Human-readable form of a simplex: the generator name, wrapped as
    /// `s{j,..}(name)` when degenerate.
    pub fn simplex_label(&self, x: &SimplexRef) -> String {
        let name = self.gen_name(x.gen);
        if x.op.is_identity() {
            name.to_string()
        } else {
            let positions: Vec<String> = x.op.collapsed().iter().map(usize::to_string).collect();
            format!("s{{{}}}({name})", positions.join(","))
        }
    }

    /// The presheaf action `x · alpha`, returned in normal form.
    pub fn act(&self, x: &SimplexRef, alpha: &MonotoneMap) -> Result<SimplexRef, SsetError> {
        if alpha.dst().n() != x.dim() {
            return Err(SsetError::ActionDomain {
                simplex_dim: x.dim(),
                map_dst: alpha.dst().n(),
            });
        }
        Ok(self.act_unchecked(x, alpha))
    }

    pub(crate) fn act_unchecked(&self, x: &SimplexRef, alpha: &MonotoneMap) -> SimplexRef {
        let composite =
            x.op.to_map()
                .compose(alpha)
                .expect("action domain checked by caller");
        let (epi, mono) = composite.epi_mono_factor();
        let inner = self.restrict(x.gen, &mono);
        SimplexRef {
            op: inner.op.after(&epi),
            gen: inner.gen,
        }
    }

    /// The generator `g` restricted along an injection into its dimension.
    fn restrict(&self, g: Gen, mono: &MonotoneMap) -> SimplexRef {
        if mono.is_identity() {
            return SimplexRef::nondegenerate(g);
        }
        // peel off the coface for the largest missed vertex: mono = δ_i ∘ rest
        let values = mono.values();
        let missed = (0..=g.dim as usize)
            .rev()
            .find(|v| !values.contains(v))
            .expect("a non-identity injection misses a vertex");
        let rest = MonotoneMap::new(
            mono.src(),
            Ordinal::new(g.dim - 1).expect("dim >= 0 here"),
            values
                .iter()
                .map(|&v| if v > missed { v - 1 } else { v })
                .collect(),
        )
        .expect("peeled injection is monotone");
        let face = &self.faces(g)[missed];
        self.act_unchecked(face, &rest)
    }

    /// The `i`-th face of a simplex of dimension at least 0.
    pub fn face(&self, x: &SimplexRef, i: usize) -> SimplexRef {
        self.act_unchecked(x, &MonotoneMap::coface(x.dim(), i))
    }

    /// The `i`-th degeneracy of a simplex of dimension at least 0.
    pub fn degeneracy(&self, x: &SimplexRef, i: usize) -> SimplexRef {
        self.act_unchecked(x, &MonotoneMap::codegeneracy(x.dim(), i))
    }

    /// Every simplex of dimension `dim`, degenerate ones included, ordered by
    /// generator and then by collapsed positions.
    pub fn simplices(&self, dim: i32) -> Vec<SimplexRef> {
        let mut out = Vec::new();
        if dim < -1 {
            return out;
        }
        let src = Ordinal::new(dim).expect("dim >= -1");
        for m in -1..=dim.min(self.topdim()) {
            let target = Ordinal::new(m).expect("m >= -1");
            let mut ops: Vec<DegeneracyOp> = MonotoneMap::all(src, target)
                .iter()
                .filter(|f| f.is_surjective())
                .map(|f| DegeneracyOp::from_surjection(f).expect("filtered to surjections"))
                .collect();
            ops.sort();
            for g in self.gens(m) {
                out.extend(ops.iter().map(|op| SimplexRef {
                    op: op.clone(),
                    gen: g,
                }));
            }
        }
        out
    }

    /// Census per dimension, indexed from dimension `-1` up to `max_dim`
    /// (default: `topdim`). With `nondegenerate_only` unset every simplex is
    /// counted.
    pub fn f_vector(&self, nondegenerate_only: bool, max_dim: Option<i32>) -> Vec<usize> {
        let top = max_dim.unwrap_or(self.topdim()).max(-1);
        (-1..=top)
            .map(|d| {
                if nondegenerate_only {
                    self.count(d)
                } else {
                    // a d-simplex over an m-generator is a choice of d - m collapsed positions
                    (-1..=d.min(self.topdim()))
                        .filter(|&m| m >= 0 || d == -1)
                        .map(|m| self.count(m) * binomial(d.max(0) as usize, (d - m) as usize))
                        .sum()
                }
            })
            .collect()
    }

    /// Checks `d_i d_j = d_{j-1} d_i` for `i < j` on every generator of
    /// dimension at least 1. On edges the `(0, 1)` instance is the
    /// augmentation coherence `q d0 = q d1`.
    pub fn validate(&self) -> ValidationReport {
        let mut violations = Vec::new();
        for dim in 1..=self.topdim() {
            for g in self.gens(dim) {
                let faces = self.faces(g);
                for j in 1..=dim as usize {
                    for i in 0..j {
                        let lhs = self.face(&faces[j], i);
                        let rhs = self.face(&faces[i], j - 1);
                        if lhs != rhs {
                            violations.push(Violation {
                                gen: g,
                                gen_name: self.gen_name(g).to_string(),
                                i,
                                j,
                                lhs: self.simplex_label(&lhs),
                                rhs: self.simplex_label(&rhs),
                            });
                        }
                    }
                }
            }
        }
        ValidationReport {
            set: self.name.clone(),
            violations,
        }
    }

    /// Connected components of the vertex-edge graph: the count and a
    /// component label per vertex, labels numbered by first vertex.
    pub fn components(&self) -> (usize, Vec<usize>) {
        let n = self.count(0);
        let mut uf = UnionFind::<usize>::new(n);
        for e in self.gens(1) {
            let faces = self.faces(e);
            uf.union(faces[0].gen.index, faces[1].gen.index);
        }
        let mut labels = vec![usize::MAX; n];
        let mut root_label = HashMap::new();
        for (v, label) in labels.iter_mut().enumerate() {
            let next = root_label.len();
            *label = *root_label.entry(uf.find(v)).or_insert(next);
        }
        (root_label.len(), labels)
    }

    pub fn pi0(&self) -> usize {
        self.components().0
    }

    pub fn aug_kind(&self) -> AugKind {
        if self.count(-1) == 1 {
            return AugKind::Trivial;
        }
        let (k, labels) = self.components();
        if k != self.count(-1) {
            return AugKind::Explicit;
        }
        // canonical iff q factors through a bijection from components
        let mut image = vec![None; k];
        for v in self.gens(0) {
            let q = self.aug_of(v).index;
            match image[labels[v.index]] {
                None => image[labels[v.index]] = Some(q),
                Some(prev) if prev == q => {}
                Some(_) => return AugKind::Explicit,
            }
        }
        let hit: HashSet<usize> = image.iter().flatten().copied().collect();
        if hit.len() == k && image.iter().all(Option::is_some) {
            AugKind::Canonical
        } else {
            AugKind::Explicit
        }
    }

    /// Number of generators over all dimensions.
    pub fn size(&self) -> usize {
        self.layers.iter().map(Vec::len).sum()
    }
}

pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1usize, |acc, i| acc * (n - i) / (i + 1))
}

/// One failed simplicial identity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub gen: Gen,
    pub gen_name: String,
    pub i: usize,
    pub j: usize,
    pub lhs: String,
    pub rhs: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.gen.dim == 1 {
            write!(
                f,
                "{} (dim 1): augmentation mismatch, q d0 = {} but q d1 = {}",
                self.gen_name, self.lhs, self.rhs
            )
        } else {
            write!(
                f,
                "{} (dim {}): d{} d{} = {} but d{} d{} = {}",
                self.gen_name,
                self.gen.dim,
                self.i,
                self.j,
                self.lhs,
                self.j - 1,
                self.i,
                self.rhs
            )
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValidationReport {
    pub set: String,
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_clean(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn into_result(self) -> Result<(), SsetError> {
        if self.is_clean() {
            return Ok(());
        }
        Err(SsetError::Invalid {
            name: self.set.clone(),
            summary: self.violations[0].to_string(),
        })
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_clean() {
            return writeln!(f, "{}: clean", self.set);
        }
        writeln!(f, "{}: {} violation(s)", self.set, self.violations.len())?;
        for v in &self.violations {
            writeln!(f, "  {v}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ord(n: i32) -> Ordinal {
        Ordinal::new(n).unwrap()
    }

    #[test]
    fn acting_by_identity_is_identity() {
        let x = standard_simplex(2);
        let top = SimplexRef::nondegenerate(Gen::new(2, 0));
        assert_eq!(x.act(&top, &MonotoneMap::identity(ord(2))).unwrap(), top);
    }

    #[test]
    fn faces_of_the_representable_are_cofaces() {
        let x = standard_simplex(2);
        let top = SimplexRef::nondegenerate(Gen::new(2, 0));
        let edge = x.act(&top, &MonotoneMap::coface(2, 1)).unwrap();
        assert!(!edge.is_degenerate());
        assert_eq!(x.gen_name(edge.gen), "0.2");
    }

    #[test]
    fn face_of_a_degenerate_edge() {
        let x = standard_simplex(1);
        let v = SimplexRef::nondegenerate(x.find("0").unwrap());
        let s0v = x.degeneracy(&v, 0);
        assert_eq!(s0v.op.collapsed(), &[0]);
        assert_eq!(x.act(&s0v, &MonotoneMap::coface(1, 0)).unwrap(), v);
        assert_eq!(x.face(&s0v, 1), v);
    }

    #[test]
    fn action_table_of_the_interval_matches_brute_force() {
        // in Δ[1] a k-simplex is a monotone map [k] -> [1] and acting is precomposition
        let x = standard_simplex(1);
        let as_map = |s: &SimplexRef| -> MonotoneMap {
            let vertices: Vec<usize> = x
                .gen_name(s.gen)
                .split('.')
                .map(|t| t.parse().unwrap())
                .collect();
            let inj = MonotoneMap::new(ord(s.gen.dim), ord(1), vertices).unwrap();
            inj.compose(&s.op.to_map()).unwrap()
        };
        for k in 0..=2 {
            for s in x.simplices(k) {
                let brute = as_map(&s);
                for l in 0..=2 {
                    for alpha in MonotoneMap::all(ord(l), ord(k)) {
                        let acted = x.act(&s, &alpha).unwrap();
                        assert_eq!(as_map(&acted), brute.compose(&alpha).unwrap());
                    }
                }
            }
        }
    }

    #[test]
    fn action_rejects_wrong_domain() {
        let x = standard_simplex(2);
        let top = SimplexRef::nondegenerate(Gen::new(2, 0));
        assert!(matches!(
            x.act(&top, &MonotoneMap::coface(1, 0)),
            Err(SsetError::ActionDomain { .. })
        ));
    }

    #[test]
    fn normal_form_is_stable_under_renormalization() {
        let x = standard_simplex(3);
        for d in 0..=5 {
            for s in x.simplices(d) {
                let again = x.act(&s, &MonotoneMap::identity(ord(d))).unwrap();
                assert_eq!(again, s);
            }
        }
    }

    #[test]
    fn census_of_all_simplices() {
        let x = standard_simplex(1);
        assert_eq!(x.f_vector(false, Some(2)), vec![1, 2, 3, 4]);
        for d in -1..=4 {
            assert_eq!(
                x.simplices(d).len(),
                x.f_vector(false, Some(4))[(d + 1) as usize]
            );
        }
        assert_eq!(standard_simplex(2).f_vector(true, None), vec![1, 3, 3, 1]);
        assert_eq!(s0().f_vector(true, None), vec![1, 2]);
    }

    #[test]
    fn validation_catches_swapped_faces() {
        let x = standard_simplex(2);
        assert!(x.validate().is_clean());
        let mut layers = x.to_layers();
        layers[3][0].faces.swap(0, 1);
        let bad = AugSimplicialSet::from_layers("bad", layers).unwrap();
        let report = bad.validate();
        assert!(!report.is_clean());
        assert!(report.violations.iter().all(|v| v.gen_name == "0.1.2"));
        assert!(report.to_string().contains("d0 d2"), "{report}");
    }

    #[test]
    fn validation_catches_incoherent_augmentation() {
        // an edge between vertices with different augmentation values
        let layers = vec![
            vec![GenSpec::new("a", vec![]), GenSpec::new("b", vec![])],
            vec![
                GenSpec::new("u", vec![SimplexRef::nondegenerate(Gen::new(-1, 0))]),
                GenSpec::new("v", vec![SimplexRef::nondegenerate(Gen::new(-1, 1))]),
            ],
            vec![GenSpec::new(
                "e",
                vec![
                    SimplexRef::nondegenerate(Gen::new(0, 1)),
                    SimplexRef::nondegenerate(Gen::new(0, 0)),
                ],
            )],
        ];
        let x = AugSimplicialSet::from_layers("bad", layers).unwrap();
        let report = x.validate();
        assert_eq!(report.violations.len(), 1);
        assert!(report.violations[0].to_string().contains("augmentation"));
    }

    #[test]
    fn shape_errors() {
        let dup = vec![vec![GenSpec::new("a", vec![]), GenSpec::new("a", vec![])]];
        assert_eq!(
            AugSimplicialSet::from_layers("x", dup),
            Err(SsetError::DuplicateName("a".into()))
        );
        let missing = vec![
            vec![],
            vec![GenSpec::new(
                "v",
                vec![SimplexRef::nondegenerate(Gen::new(-1, 0))],
            )],
        ];
        assert!(matches!(
            AugSimplicialSet::from_layers("x", missing),
            Err(SsetError::Malformed { .. })
        ));
        let bad_name = vec![vec![GenSpec::new("a b", vec![])]];
        assert!(matches!(
            AugSimplicialSet::from_layers("x", bad_name),
            Err(SsetError::BadName(_))
        ));
    }

    #[test]
    fn components_and_aug_kinds() {
        let two = disjoint_union(&standard_simplex(0), &standard_simplex(0)).unwrap();
        assert_eq!(two.pi0(), 2);
        assert_eq!(two.aug_kind(), AugKind::Canonical);
        assert_eq!(s0().aug_kind(), AugKind::Trivial);
        assert_eq!(standard_simplex(3).pi0(), 1);
        let mixed = disjoint_union(&two, &s0()).unwrap();
        assert_eq!(mixed.aug_kind(), AugKind::Explicit);
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(5, 2), 10);
        assert_eq!(binomial(0, 0), 1);
        assert_eq!(binomial(3, 4), 0);
    }
}
