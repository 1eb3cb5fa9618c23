//! The join `X ⊙ Y` induced by the ordinal sum.
//!
//! The `n`-simplices of `X ⊙ Y` are pairs `(x, y)` with `dim x + dim y + 1 = n`,
//! where either side may sit in the augmentation layer. A pair of
//! non-degenerate simplices is non-degenerate, so the generators of the join
//! are exactly the generator pairs. Faces act on whichever side owns the
//! index, and an operator `η` on one side lifts to the pair as `η + id` or
//! `id + η`, which is again a surjection.

use std::collections::HashMap;

use thiserror::Error;

use crate::ordinal::{ordinal_sum_map, DegeneracyOp, MonotoneMap, Ordinal};
use crate::sset::{
    s0, standard_simplex, AugSimplicialSet, Gen, GenSpec, SimplexRef, SimplicialMap, SsetError,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum JoinError {
    #[error("join input is invalid: {0}")]
    InvalidInput(#[from] SsetError),
    #[error("structure map is not an isomorphism: {0}")]
    NotIsomorphism(String),
}

/// A join together with the pair of factor generators behind each of its
/// generators.
#[derive(Debug, Clone)]
pub struct Joined {
    pub set: AugSimplicialSet,
    /// `provenance[d + 1][i]` is the `(left, right)` pair for generator `(d, i)`.
    pub provenance: Vec<Vec<(Gen, Gen)>>,
}

impl Joined {
    pub fn pair(&self, g: Gen) -> (Gen, Gen) {
        self.provenance[(g.dim + 1) as usize][g.index]
    }
}

fn lift(op: &DegeneracyOp, left_block: bool, other: i32) -> DegeneracyOp {
    let id = MonotoneMap::identity(Ordinal::new(other).expect("dim >= -1"));
    let map = if left_block {
        ordinal_sum_map(&op.to_map(), &id)
    } else {
        ordinal_sum_map(&id, &op.to_map())
    };
    DegeneracyOp::from_surjection(&map).expect("sum of surjections is surjective")
}

/// `X ⊙ Y` with provenance. Generators are ordered by dimension, then by the
/// dimension of the left factor, then by the factor indices.
pub fn join_traced(x: &AugSimplicialSet, y: &AugSimplicialSet) -> Result<Joined, JoinError> {
    x.validate().into_result()?;
    y.validate().into_result()?;

    let top = x.topdim() + y.topdim() + 1;
    let mut provenance: Vec<Vec<(Gen, Gen)>> = Vec::new();
    let mut index: HashMap<(Gen, Gen), Gen> = HashMap::new();
    for n in -1..=top.max(-1) {
        let mut layer = Vec::new();
        for a in -1..=n {
            let b = n - 1 - a;
            for xg in x.gens(a) {
                for yg in y.gens(b) {
                    index.insert((xg, yg), Gen::new(n, layer.len()));
                    layer.push((xg, yg));
                }
            }
        }
        provenance.push(layer);
    }

    let layers: Vec<Vec<GenSpec>> = provenance
        .iter()
        .enumerate()
        .map(|(slot, layer)| {
            let n = slot as i32 - 1;
            layer
                .iter()
                .map(|&(xg, yg)| {
                    let (a, b) = (xg.dim, yg.dim);
                    let faces = (0..=n.max(-1))
                        .map(|i| {
                            if i <= a {
                                let f = &x.faces(xg)[i as usize];
                                SimplexRef {
                                    op: lift(&f.op, true, b),
                                    gen: index[&(f.gen, yg)],
                                }
                            } else {
                                let f = &y.faces(yg)[(i - a - 1) as usize];
                                SimplexRef {
                                    op: lift(&f.op, false, a),
                                    gen: index[&(xg, f.gen)],
                                }
                            }
                        })
                        .collect();
                    GenSpec::new(format!("({}|{})", x.gen_name(xg), y.gen_name(yg)), faces)
                })
                .collect()
        })
        .collect();
    let set = AugSimplicialSet::from_layers(format!("({}.{})", x.name(), y.name()), layers)?;
    Ok(Joined { set, provenance })
}

pub fn join(x: &AugSimplicialSet, y: &AugSimplicialSet) -> Result<AugSimplicialSet, JoinError> {
    Ok(join_traced(x, y)?.set)
}

/// The join unit `Δ[-1]`: a lone augmentation point.
pub fn unit() -> AugSimplicialSet {
    standard_simplex(-1)
}

/// The unitor `Δ[-1] ⊙ X -> X` (or `X ⊙ Δ[-1] -> X` when `unit_on_left` is
/// unset), sending each pair to its `X` factor. Returns the join as well.
pub fn unitor(
    x: &AugSimplicialSet,
    unit_on_left: bool,
) -> Result<(AugSimplicialSet, SimplicialMap), JoinError> {
    let joined = if unit_on_left {
        join_traced(&unit(), x)?
    } else {
        join_traced(x, &unit())?
    };
    let assignment = joined
        .provenance
        .iter()
        .map(|layer| {
            layer
                .iter()
                .map(|&(l, r)| SimplexRef::nondegenerate(if unit_on_left { r } else { l }))
                .collect()
        })
        .collect();
    let map = SimplicialMap::from_assignment(assignment);
    if !map.is_isomorphism(&joined.set, x) {
        let detail = map
            .check(&joined.set, x)
            .first()
            .map_or_else(|| "not bijective".to_string(), ToString::to_string);
        return Err(JoinError::NotIsomorphism(detail));
    }
    Ok((joined.set, map))
}

/// Non-degenerate census of `X ⊙ Y` from the factor censuses alone,
/// indexed from dimension `-1`.
pub fn join_f_vector(x: &AugSimplicialSet, y: &AugSimplicialSet) -> Vec<usize> {
    let top = x.topdim() + y.topdim() + 1;
    (-1..=top.max(-1))
        .map(|n| (-1..=n).map(|a| x.count(a) * y.count(n - 1 - a)).sum())
        .collect()
}

/// `Sⁿ`: the left-associated join of `n + 1` copies of `S⁰`.
pub fn sphere(n: u32) -> AugSimplicialSet {
    let base = s0();
    let mut acc = base.clone();
    for _ in 0..n {
        acc = join(&acc, &base).expect("S0 is valid");
    }
    acc.with_name(format!("S{n}"))
}

/// The re-association `(X ⊙ Y) ⊙ Z -> X ⊙ (Y ⊙ Z)` together with both sides.
#[derive(Debug, Clone)]
pub struct AssocWitness {
    pub left: AugSimplicialSet,
    pub right: AugSimplicialSet,
    pub map: SimplicialMap,
}

/// Builds the generator bijection `((x, y), z) -> (x, (y, z))` and checks
/// that it is an isomorphism.
pub fn assoc_witness(
    x: &AugSimplicialSet,
    y: &AugSimplicialSet,
    z: &AugSimplicialSet,
) -> Result<AssocWitness, JoinError> {
    let xy = join_traced(x, y)?;
    let left = join_traced(&xy.set, z)?;
    let yz = join_traced(y, z)?;
    let right = join_traced(x, &yz.set)?;

    let mut target: HashMap<(Gen, Gen, Gen), Gen> = HashMap::new();
    for g in right.set.all_gens() {
        let (xg, yzg) = right.pair(g);
        let (yg, zg) = yz.pair(yzg);
        target.insert((xg, yg, zg), g);
    }
    let assignment = left
        .provenance
        .iter()
        .map(|layer| {
            layer
                .iter()
                .map(|&(xyg, zg)| {
                    let (xg, yg) = xy.pair(xyg);
                    SimplexRef::nondegenerate(target[&(xg, yg, zg)])
                })
                .collect()
        })
        .collect();
    let map = SimplicialMap::from_assignment(assignment);
    if !map.is_isomorphism(&left.set, &right.set) {
        let detail = map
            .check(&left.set, &right.set)
            .first()
            .map_or_else(|| "not bijective".to_string(), ToString::to_string);
        return Err(JoinError::NotIsomorphism(detail));
    }
    Ok(AssocWitness {
        left: left.set,
        right: right.set,
        map,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sset::{
        are_isomorphic, binomial, boundary, canonical_augmentation, disjoint_union, sigma,
    };

    #[test]
    fn diamond() {
        let d = join(&s0(), &s0()).unwrap();
        assert_eq!(d.f_vector(true, None), vec![1, 4, 4]);
        assert!(d.validate().is_clean());
        for e in d.gens(1) {
            let name = d.gen_name(e).to_string();
            let faces = d.faces(e);
            // edge (a|b): d0 = (*|b), d1 = (a|*)
            let inner = &name[1..name.len() - 1];
            let (a, b) = inner.split_once('|').unwrap();
            assert_eq!(d.gen_name(faces[0].gen), format!("(*|{b})"));
            assert_eq!(d.gen_name(faces[1].gen), format!("({a}|*)"));
        }
        assert_eq!(d.pi0(), 1);
    }

    #[test]
    fn joins_of_standard_simplices() {
        for p in 0..=3 {
            for q in 0..=3 {
                let j = join(&standard_simplex(p), &standard_simplex(q)).unwrap();
                assert!(
                    are_isomorphic(&j, &standard_simplex(p + q + 1)).is_some(),
                    "{p} {q}"
                );
            }
        }
    }

    #[test]
    fn unit_laws() {
        for x in [standard_simplex(2), s0(), sigma(2).unwrap()] {
            assert!(are_isomorphic(&join(&unit(), &x).unwrap(), &x).is_some());
            assert!(are_isomorphic(&join(&x, &unit()).unwrap(), &x).is_some());
            for side in [true, false] {
                let (joined, map) = unitor(&x, side).unwrap();
                assert!(map.check(&joined, &x).is_empty());
            }
        }
    }

    #[test]
    fn canonical_augmentation_counterexample() {
        let two = disjoint_union(&standard_simplex(0), &standard_simplex(0)).unwrap();
        let x = canonical_augmentation(&two);
        let j = join(&x, &x).unwrap();
        assert_eq!(j.f_vector(true, None), vec![4, 8, 4]);
        assert_eq!(j.pi0(), 4);
        assert!(j.validate().is_clean());
    }

    #[test]
    fn census_formula() {
        let d1 = standard_simplex(1);
        assert_eq!(join_f_vector(&d1, &d1), vec![1, 4, 6, 4, 1]);
        assert_eq!(join_f_vector(&s0(), &s0()), vec![1, 4, 4]);
        let x = sigma(3).unwrap();
        assert_eq!(join_f_vector(&x, &unit()), x.f_vector(true, None));
        let pool = [
            standard_simplex(2),
            s0(),
            sigma(2).unwrap(),
            boundary(3).unwrap(),
        ];
        for a in &pool {
            for b in &pool {
                assert_eq!(
                    join_f_vector(a, b),
                    join(a, b).unwrap().f_vector(true, None)
                );
            }
        }
    }

    #[test]
    fn spheres() {
        assert_eq!(sphere(0).f_vector(true, None), vec![1, 2]);
        assert_eq!(sphere(1).f_vector(true, None), vec![1, 4, 4]);
        assert_eq!(sphere(2).f_vector(true, None), vec![1, 6, 12, 8]);
        for n in 0..=3u32 {
            let s = sphere(n);
            assert!(s.validate().is_clean());
            for k in -1..=n as i32 {
                let expected = binomial(n as usize + 1, (k + 1) as usize) * (1usize << (k + 1));
                assert_eq!(s.count(k), expected);
            }
        }
    }

    #[test]
    fn reassociation() {
        let cases = [
            (
                standard_simplex(0),
                standard_simplex(0),
                standard_simplex(0),
            ),
            (s0(), s0(), s0()),
            (standard_simplex(1), s0(), sigma(2).unwrap()),
        ];
        for (x, y, z) in &cases {
            let w = assoc_witness(x, y, z).unwrap();
            assert!(w.map.is_isomorphism(&w.left, &w.right));
            assert_eq!(w.left.f_vector(true, None), w.right.f_vector(true, None));
        }
        let w = assoc_witness(&s0(), &s0(), &s0()).unwrap();
        assert_eq!(w.left.f_vector(true, None), vec![1, 6, 12, 8]);
        let w = assoc_witness(
            &standard_simplex(0),
            &standard_simplex(0),
            &standard_simplex(0),
        )
        .unwrap();
        assert!(are_isomorphic(&w.left, &standard_simplex(2)).is_some());
    }

    #[test]
    fn rejects_invalid_input() {
        let mut layers = standard_simplex(2).to_layers();
        layers[3][0].faces.swap(0, 2);
        let bad = AugSimplicialSet::from_layers("bad", layers).unwrap();
        assert!(matches!(join(&bad, &s0()), Err(JoinError::InvalidInput(_))));
    }
}
