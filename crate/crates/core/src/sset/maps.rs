//! Simplicial maps: checking, enumeration of hom-sets, and isomorphism
//! search.

use std::collections::HashMap;
use std::fmt;

use super::{dec, AugSimplicialSet, Gen, SimplexRef, SsetError};

/// A map of augmented simplicial sets, given by where each generator of the
/// source goes. Degeneracies follow automatically.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimplicialMap {
    /// `assignment[d + 1][i]` is the image of generator `(d, i)`.
    assignment: Vec<Vec<SimplexRef>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MapViolation {
    pub gen: Gen,
    pub face: usize,
    pub message: String,
}

impl fmt::Display for MapViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({}, {}) face {}: {}",
            self.gen.dim, self.gen.index, self.face, self.message
        )
    }
}

impl SimplicialMap {
    pub fn from_assignment(assignment: Vec<Vec<SimplexRef>>) -> Self {
        SimplicialMap { assignment }
    }

    pub fn image(&self, g: Gen) -> &SimplexRef {
        &self.assignment[(g.dim + 1) as usize][g.index]
    }

    /// Image of an arbitrary simplex of the source.
    pub fn apply(&self, dst: &AugSimplicialSet, x: &SimplexRef) -> SimplexRef {
        dst.act_unchecked(self.image(x.gen), &x.op.to_map())
    }

    /// Checks shape and that faces (including augmentation) commute.
    pub fn check(&self, src: &AugSimplicialSet, dst: &AugSimplicialSet) -> Vec<MapViolation> {
        let mut out = Vec::new();
        for g in src.all_gens() {
            let Some(image) = self
                .assignment
                .get((g.dim + 1) as usize)
                .and_then(|l| l.get(g.index))
            else {
                out.push(MapViolation {
                    gen: g,
                    face: 0,
                    message: "no image assigned".into(),
                });
                continue;
            };
            let in_range = image.dim() == g.dim
                && image.gen.dim <= dst.topdim()
                && image.gen.index < dst.count(image.gen.dim);
            if !in_range {
                out.push(MapViolation {
                    gen: g,
                    face: 0,
                    message: "image has the wrong dimension or does not exist".into(),
                });
                continue;
            }
            if g.dim < 0 {
                continue;
            }
            for (i, face) in src.faces(g).iter().enumerate() {
                let lhs = dst.face(image, i);
                let rhs = self.apply(dst, face);
                if lhs != rhs {
                    out.push(MapViolation {
                        gen: g,
                        face: i,
                        message: format!(
                            "d{i} f = {} but f d{i} = {}",
                            dst.simplex_label(&lhs),
                            dst.simplex_label(&rhs)
                        ),
                    });
                }
            }
        }
        if self.assignment.len() > (src.topdim() + 2) as usize {
            out.push(MapViolation {
                gen: Gen::new(src.topdim() + 1, 0),
                face: 0,
                message: "assignment has more layers than the source".into(),
            });
        }
        out
    }

    /// True when the map commutes with faces, sends generators to
    /// generators, and is bijective in every dimension.
    pub fn is_isomorphism(&self, src: &AugSimplicialSet, dst: &AugSimplicialSet) -> bool {
        if !self.check(src, dst).is_empty() || src.topdim() != dst.topdim() {
            return false;
        }
        (-1..=src.topdim()).all(|d| {
            if src.count(d) != dst.count(d) {
                return false;
            }
            let mut hit = vec![false; dst.count(d)];
            src.gens(d).all(|g| {
                let im = self.image(g);
                !im.is_degenerate() && !std::mem::replace(&mut hit[im.gen.index], true)
            })
        })
    }

    /// Inverse of a generator bijection; `None` unless every image is a
    /// non-degenerate generator and the assignment is injective.
    pub fn inverse(&self, dst: &AugSimplicialSet) -> Option<SimplicialMap> {
        let mut layers: Vec<Vec<Option<SimplexRef>>> = (-1..=dst.topdim())
            .map(|d| vec![None; dst.count(d)])
            .collect();
        for (slot, layer) in self.assignment.iter().enumerate() {
            for (i, im) in layer.iter().enumerate() {
                if im.is_degenerate() {
                    return None;
                }
                let cell = layers
                    .get_mut((im.gen.dim + 1) as usize)?
                    .get_mut(im.gen.index)?;
                if cell.is_some() {
                    return None;
                }
                *cell = Some(SimplexRef::nondegenerate(Gen::new(slot as i32 - 1, i)));
            }
        }
        let assignment = layers
            .into_iter()
            .map(|l| l.into_iter().collect::<Option<Vec<_>>>())
            .collect::<Option<Vec<_>>>()?;
        Some(SimplicialMap { assignment })
    }

    /// Lines `name -> image`, in generator order.
    pub fn describe(&self, src: &AugSimplicialSet, dst: &AugSimplicialSet) -> Vec<String> {
        src.all_gens()
            .map(|g| {
                format!(
                    "{} -> {}",
                    src.gen_name(g),
                    dst.simplex_label(self.image(g))
                )
            })
            .collect()
    }
}

/// Candidate images per source dimension, each paired with its faces.
struct Targets {
    by_dim: Vec<Vec<(SimplexRef, Vec<SimplexRef>)>>,
}

impl Targets {
    fn new(dst: &AugSimplicialSet, top: i32) -> Self {
        let by_dim = (-1..=top)
            .map(|d| {
                dst.simplices(d)
                    .into_iter()
                    .map(|s| {
                        let faces = if d >= 0 {
                            (0..=d as usize).map(|i| dst.face(&s, i)).collect()
                        } else {
                            Vec::new()
                        };
                        (s, faces)
                    })
                    .collect()
            })
            .collect();
        Targets { by_dim }
    }
}

/// Backtracking over generator assignments in `(dim, index)` order; `visit`
/// returns `false` to stop early.
fn search_maps(
    src: &AugSimplicialSet,
    dst: &AugSimplicialSet,
    visit: &mut dyn FnMut(&[Vec<SimplexRef>]) -> bool,
) {
    let order: Vec<Gen> = src.all_gens().collect();
    let targets = Targets::new(dst, src.topdim());
    let mut assignment: Vec<Vec<SimplexRef>> = (-1..=src.topdim()).map(|_| Vec::new()).collect();

    fn step(
        pos: usize,
        order: &[Gen],
        src: &AugSimplicialSet,
        dst: &AugSimplicialSet,
        targets: &Targets,
        assignment: &mut Vec<Vec<SimplexRef>>,
        visit: &mut dyn FnMut(&[Vec<SimplexRef>]) -> bool,
    ) -> bool {
        let Some(&g) = order.get(pos) else {
            return visit(assignment);
        };
        let wanted: Vec<SimplexRef> = if g.dim >= 0 {
            src.faces(g)
                .iter()
                .map(|f| {
                    dst.act_unchecked(
                        &assignment[(f.gen.dim + 1) as usize][f.gen.index],
                        &f.op.to_map(),
                    )
                })
                .collect()
        } else {
            Vec::new()
        };
        for (candidate, faces) in &targets.by_dim[(g.dim + 1) as usize] {
            if *faces != wanted {
                continue;
            }
            assignment[(g.dim + 1) as usize].push(candidate.clone());
            let keep_going = step(pos + 1, order, src, dst, targets, assignment, visit);
            assignment[(g.dim + 1) as usize].pop();
            if !keep_going {
                return false;
            }
        }
        true
    }

    step(0, &order, src, dst, &targets, &mut assignment, visit);
}

/// Every augmentation-preserving simplicial map `src -> dst`, in
/// lexicographic order of generator images.
pub fn enumerate_maps(src: &AugSimplicialSet, dst: &AugSimplicialSet) -> Vec<SimplicialMap> {
    let mut out = Vec::new();
    search_maps(src, dst, &mut |a| {
        out.push(SimplicialMap {
            assignment: a.to_vec(),
        });
        true
    });
    out
}

/// `|enumerate_maps(src, dst)|` without materializing the maps.
pub fn count_maps(src: &AugSimplicialSet, dst: &AugSimplicialSet) -> usize {
    let mut n = 0usize;
    search_maps(src, dst, &mut |_| {
        n += 1;
        true
    });
    n
}

/// `|[X, Y]_n| = |ASS(X, Dec^{n+1} Y)|`.
pub fn internal_hom_level(
    x: &AugSimplicialSet,
    y: &AugSimplicialSet,
    n: usize,
) -> Result<usize, SsetError> {
    let mut shifted = y.clone();
    for _ in 0..=n {
        shifted = dec(&shifted)?;
    }
    Ok(count_maps(x, &shifted))
}

/// Structural fingerprint of a generator: its face operators and how often
/// it occurs as a face. Isomorphisms preserve it.
fn fingerprints(x: &AugSimplicialSet) -> HashMap<Gen, (Vec<Vec<usize>>, usize)> {
    let mut cofaces: HashMap<Gen, usize> = HashMap::new();
    for g in x.all_gens() {
        for f in x.faces(g) {
            *cofaces.entry(f.gen).or_default() += 1;
        }
    }
    x.all_gens()
        .map(|g| {
            let ops = x
                .faces(g)
                .iter()
                .map(|f| f.op.collapsed().to_vec())
                .collect();
            (g, (ops, cofaces.get(&g).copied().unwrap_or(0)))
        })
        .collect()
}

#[derive(Clone)]
struct Partial {
    forward: Vec<Vec<Option<usize>>>,
    used: Vec<Vec<bool>>,
}

impl Partial {
    /// Records `a -> b` and forces the images of all faces of `a`.
    fn assign(&mut self, x: &AugSimplicialSet, y: &AugSimplicialSet, a: Gen, b: Gen) -> bool {
        let slot = (a.dim + 1) as usize;
        if let Some(existing) = self.forward[slot][a.index] {
            return existing == b.index;
        }
        if self.used[slot][b.index] {
            return false;
        }
        self.forward[slot][a.index] = Some(b.index);
        self.used[slot][b.index] = true;
        for (fa, fb) in x.faces(a).iter().zip(y.faces(b)) {
            if fa.op != fb.op || !self.assign(x, y, fa.gen, fb.gen) {
                return false;
            }
        }
        true
    }
}

/// Finds an isomorphism `x -> y` if one exists. Generators are matched from
/// the top dimension down; each choice forces the images of its faces.
pub fn are_isomorphic(x: &AugSimplicialSet, y: &AugSimplicialSet) -> Option<SimplicialMap> {
    if x.f_vector(true, None) != y.f_vector(true, None) {
        return None;
    }
    let fx = fingerprints(x);
    let fy = fingerprints(y);
    let mut order: Vec<Gen> = x.all_gens().collect();
    order.sort_by_key(|g| (std::cmp::Reverse(g.dim), g.index));
    let start = Partial {
        forward: (-1..=x.topdim()).map(|d| vec![None; x.count(d)]).collect(),
        used: (-1..=y.topdim()).map(|d| vec![false; y.count(d)]).collect(),
    };

    fn branch(
        pos: usize,
        order: &[Gen],
        x: &AugSimplicialSet,
        y: &AugSimplicialSet,
        fx: &HashMap<Gen, (Vec<Vec<usize>>, usize)>,
        fy: &HashMap<Gen, (Vec<Vec<usize>>, usize)>,
        state: Partial,
    ) -> Option<Partial> {
        let Some(&a) = order[pos..]
            .iter()
            .find(|g| state.forward[(g.dim + 1) as usize][g.index].is_none())
        else {
            return Some(state);
        };
        let next = order.iter().position(|g| *g == a).unwrap() + 1;
        for b in y.gens(a.dim) {
            if state.used[(b.dim + 1) as usize][b.index] || fx[&a] != fy[&b] {
                continue;
            }
            let mut trial = state.clone();
            if trial.assign(x, y, a, b) {
                if let Some(done) = branch(next, order, x, y, fx, fy, trial) {
                    return Some(done);
                }
            }
        }
        None
    }

    let done = branch(0, &order, x, y, &fx, &fy, start)?;
    let assignment = done
        .forward
        .iter()
        .enumerate()
        .map(|(slot, layer)| {
            layer
                .iter()
                .map(|b| SimplexRef::nondegenerate(Gen::new(slot as i32 - 1, b.expect("complete"))))
                .collect()
        })
        .collect();
    let map = SimplicialMap { assignment };
    debug_assert!(map.is_isomorphism(x, y));
    Some(map)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sset::{boundary, disjoint_union, empty, s0, sigma, standard_simplex, GenSpec};

    /// A copy of `x` with every layer listed in reverse.
    fn reversed(x: &AugSimplicialSet) -> AugSimplicialSet {
        let layers = x.to_layers();
        let flip = |g: Gen| Gen::new(g.dim, x.count(g.dim) - 1 - g.index);
        let new_layers: Vec<Vec<GenSpec>> = layers
            .iter()
            .map(|layer| {
                layer
                    .iter()
                    .rev()
                    .map(|spec| GenSpec {
                        name: spec.name.clone(),
                        faces: spec
                            .faces
                            .iter()
                            .map(|f| SimplexRef {
                                op: f.op.clone(),
                                gen: flip(f.gen),
                            })
                            .collect(),
                    })
                    .collect()
            })
            .collect();
        AugSimplicialSet::from_layers(x.name(), new_layers).unwrap()
    }

    #[test]
    fn maps_from_a_point() {
        for n in 0..=4 {
            assert_eq!(
                count_maps(&standard_simplex(0), &standard_simplex(n)),
                (n + 1) as usize
            );
        }
    }

    #[test]
    fn maps_of_the_interval() {
        let d1 = standard_simplex(1);
        let maps = enumerate_maps(&d1, &d1);
        assert_eq!(maps.len(), 3);
        for m in &maps {
            assert!(m.check(&d1, &d1).is_empty());
        }
        assert_eq!(
            maps.iter().filter(|m| m.is_isomorphism(&d1, &d1)).count(),
            1
        );
    }

    #[test]
    fn maps_of_the_zero_sphere() {
        assert_eq!(count_maps(&s0(), &s0()), 4);
        // the canonically augmented copy has two augmentation points to respect
        let two = disjoint_union(&standard_simplex(0), &standard_simplex(0)).unwrap();
        assert_eq!(count_maps(&two, &two), 4);
        assert_eq!(count_maps(&s0(), &two), 2);
    }

    #[test]
    fn map_counts_ignore_generator_order() {
        let pool = [
            standard_simplex(2),
            s0(),
            boundary(2).unwrap(),
            sigma(2).unwrap(),
        ];
        for a in &pool {
            for b in &pool {
                let n = count_maps(a, b);
                assert_eq!(count_maps(&reversed(a), b), n);
                assert_eq!(count_maps(a, &reversed(b)), n);
            }
        }
    }

    #[test]
    fn hom_levels_from_a_point() {
        let d0 = standard_simplex(0);
        let d1 = standard_simplex(1);
        assert_eq!(internal_hom_level(&d0, &d1, 1).unwrap(), 4);
        for n in 0..=3 {
            assert_eq!(internal_hom_level(&d0, &d0, n).unwrap(), 1);
        }
    }

    #[test]
    fn hom_levels_out_of_the_unit() {
        // maps out of Δ[-1] pick an augmentation element of Dec^{n+1} Y, i.e. a simplex of Y_n
        let unit = standard_simplex(-1);
        let d1 = standard_simplex(1);
        for n in 0..=2 {
            let expected = d1.f_vector(false, Some(n as i32))[n + 1];
            assert_eq!(internal_hom_level(&unit, &d1, n).unwrap(), expected);
        }
        assert_eq!(count_maps(&empty(), &d1), 1);
    }

    #[test]
    fn isomorphism_search() {
        let d2 = standard_simplex(2);
        let iso = are_isomorphic(&d2, &d2).unwrap();
        assert!(iso.is_isomorphism(&d2, &d2));
        assert!(are_isomorphic(&standard_simplex(1), &standard_simplex(0)).is_none());
        assert!(are_isomorphic(&sigma(2).unwrap(), &boundary(2).unwrap()).is_none());

        let s3 = sigma(3).unwrap();
        let r = reversed(&s3);
        let iso = are_isomorphic(&s3, &r).unwrap();
        let inv = iso.inverse(&r).unwrap();
        assert!(inv.is_isomorphism(&r, &s3));
        for g in s3.all_gens() {
            assert_eq!(inv.apply(&s3, iso.image(g)), SimplexRef::nondegenerate(g));
        }
    }

    #[test]
    fn same_census_different_faces() {
        // reversing the edge 0.2 turns the transitive triangle into a directed cycle
        let path = boundary(2).unwrap();
        let mut layers = path.to_layers();
        layers[2][1].faces.reverse();
        let twisted = AugSimplicialSet::from_layers("twisted", layers).unwrap();
        assert!(twisted.validate().is_clean());
        assert!(are_isomorphic(&path, &twisted).is_none());
    }

    #[test]
    fn check_reports_broken_maps() {
        let d1 = standard_simplex(1);
        let mut assignment: Vec<Vec<SimplexRef>> = (-1..=1)
            .map(|d| d1.gens(d).map(SimplexRef::nondegenerate).collect())
            .collect();
        assignment[1].swap(0, 1);
        let bad = SimplicialMap::from_assignment(assignment);
        assert!(!bad.check(&d1, &d1).is_empty());
    }
}
