//! Constructors for the standard objects and the functors on them.

use std::collections::{HashMap, HashSet};

use super::{fresh_name, AugSimplicialSet, Gen, GenSpec, SimplexRef, SsetError};
use crate::ordinal::{ordinal_sum_map, DegeneracyOp, MonotoneMap, Ordinal};

fn aug_face(index: usize) -> Vec<SimplexRef> {
    vec![SimplexRef::nondegenerate(Gen::new(-1, index))]
}

fn vertex_list_name(values: &[usize]) -> String {
    values
        .iter()
        .map(usize::to_string)
        .collect::<Vec<_>>()
        .join(".")
}

/// The representable `Δ[n]`, trivially augmented. Generators in dimension
/// `k` are the injections `[k] -> [n]`, named by their vertex lists
/// (`"0.2"`); the augmentation point is `"*"`.
pub fn standard_simplex(n: i32) -> AugSimplicialSet {
    let target = Ordinal::new(n).expect("standard simplex needs n >= -1");
    let mut layers = vec![vec![GenSpec::new("*", vec![])]];
    let mut index_of: HashMap<Vec<usize>, usize> = HashMap::new();
    for k in 0..=n {
        let injections = MonotoneMap::injections(Ordinal::new(k).unwrap(), target);
        let mut layer = Vec::with_capacity(injections.len());
        let mut next_index = HashMap::new();
        for (idx, inj) in injections.iter().enumerate() {
            let vertices = inj.values().to_vec();
            let faces = if k == 0 {
                aug_face(0)
            } else {
                (0..vertices.len())
                    .map(|i| {
                        let mut sub = vertices.clone();
                        sub.remove(i);
                        SimplexRef::nondegenerate(Gen::new(k - 1, index_of[&sub]))
                    })
                    .collect()
            };
            layer.push(GenSpec::new(vertex_list_name(&vertices), faces));
            next_index.insert(vertices, idx);
        }
        index_of = next_index;
        layers.push(layer);
    }
    AugSimplicialSet::from_layers(format!("D{n}"), layers).expect("standard simplex is well formed")
}

/// `∂Δ[n]`: the standard simplex without its top generator.
pub fn boundary(n: i32) -> Result<AugSimplicialSet, SsetError> {
    if n < 1 {
        return Err(SsetError::Argument(format!(
            "boundary needs n >= 1, got {n}"
        )));
    }
    let mut layers = standard_simplex(n).to_layers();
    layers.pop();
    AugSimplicialSet::from_layers(format!("bD{n}"), layers)
}

/// The set with no generators at all, not even an augmentation element.
pub fn empty() -> AugSimplicialSet {
    AugSimplicialSet::from_layers("empty", vec![Vec::new()]).expect("empty set")
}

/// Graded disjoint union. When names collide, the left summand's names are
/// prefixed `L.` and the right's `R.`.
pub fn disjoint_union(
    x: &AugSimplicialSet,
    y: &AugSimplicialSet,
) -> Result<AugSimplicialSet, SsetError> {
    let collide = x.all_gens().any(|g| y.find(x.gen_name(g)).is_some());
    let (lp, rp) = if collide { ("L.", "R.") } else { ("", "") };
    let top = x.topdim().max(y.topdim());
    let mut layers = Vec::new();
    for dim in -1..=top {
        let mut layer: Vec<GenSpec> = x
            .gens(dim)
            .map(|g| GenSpec::new(format!("{lp}{}", x.gen_name(g)), x.faces(g).to_vec()))
            .collect();
        layer.extend(y.gens(dim).map(|g| {
            let faces = y
                .faces(g)
                .iter()
                .map(|f| SimplexRef {
                    op: f.op.clone(),
                    gen: Gen::new(f.gen.dim, f.gen.index + x.count(f.gen.dim)),
                })
                .collect();
            GenSpec::new(format!("{rp}{}", y.gen_name(g)), faces)
        }));
        layers.push(layer);
    }
    AugSimplicialSet::from_layers(format!("{}+{}", x.name(), y.name()), layers)
}

/// `S⁰`: two vertices `n` and `s` over a single augmentation point.
pub fn s0() -> AugSimplicialSet {
    let layers = vec![
        vec![GenSpec::new("*", vec![])],
        vec![
            GenSpec::new("n", aug_face(0)),
            GenSpec::new("s", aug_face(0)),
        ],
    ];
    AugSimplicialSet::from_layers("S0", layers).expect("S0 is well formed")
}

fn replace_augmentation(
    x: &AugSimplicialSet,
    aug_names: Vec<String>,
    target: impl Fn(Gen) -> usize,
) -> AugSimplicialSet {
    let mut layers = x.to_layers();
    if layers.len() < 2 {
        layers.resize(2, Vec::new());
    }
    layers[0] = aug_names
        .into_iter()
        .map(|n| GenSpec::new(n, vec![]))
        .collect();
    for (i, spec) in layers[1].iter_mut().enumerate() {
        spec.faces = aug_face(target(Gen::new(0, i)));
    }
    AugSimplicialSet::from_layers(x.name(), layers).expect("augmentation replacement keeps shape")
}

fn names_above_augmentation(x: &AugSimplicialSet) -> HashSet<&str> {
    x.all_gens()
        .filter(|g| g.dim >= 0)
        .map(|g| x.gen_name(g))
        .collect()
}

/// Replaces the augmentation layer by a single point.
pub fn trivial_augmentation(x: &AugSimplicialSet) -> AugSimplicialSet {
    let point = fresh_name("*", &names_above_augmentation(x));
    replace_augmentation(x, vec![point], |_| 0)
}

/// Augments by the connected components. Component `k` is named after its
/// first vertex, `[v]`.
pub fn canonical_augmentation(x: &AugSimplicialSet) -> AugSimplicialSet {
    let (k, labels) = x.components();
    let taken = names_above_augmentation(x);
    let mut names = vec![String::new(); k];
    for v in x.gens(0) {
        let slot = &mut names[labels[v.index]];
        if slot.is_empty() {
            *slot = fresh_name(&format!("[{}]", x.gen_name(v)), &taken);
        }
    }
    replace_augmentation(x, names, |v| labels[v.index])
}

/// Collapses the face-closed generator set `collapsed` to a single new
/// vertex. Simplices over collapsed generators become degeneracies of that
/// vertex; the result is trivially augmented.
pub fn quotient_collapse(
    x: &AugSimplicialSet,
    collapsed: &[Gen],
) -> Result<AugSimplicialSet, SsetError> {
    let inside: HashSet<Gen> = collapsed.iter().copied().filter(|g| g.dim >= 0).collect();
    if !inside.iter().any(|g| g.dim == 0) {
        return Err(SsetError::NoVertex);
    }
    for &g in &inside {
        if g.dim >= 1 {
            if let Some(i) = x.faces(g).iter().position(|f| !inside.contains(&f.gen)) {
                return Err(SsetError::NotFaceClosed {
                    name: x.gen_name(g).to_string(),
                    face: i,
                });
            }
        }
    }
    let taken = names_above_augmentation(x);
    let point = fresh_name("pt", &taken);
    let aug = fresh_name("*", &taken);

    // surviving generators keep their relative order; the new vertex goes first
    let mut new_index: HashMap<Gen, usize> = HashMap::new();
    let mut layers = vec![
        vec![GenSpec::new(aug, vec![])],
        vec![GenSpec::new(point, aug_face(0))],
    ];
    for dim in 0..=x.topdim() {
        let survivors: Vec<Gen> = x.gens(dim).filter(|g| !inside.contains(g)).collect();
        let base = if dim == 0 { 1 } else { 0 };
        for (k, g) in survivors.iter().enumerate() {
            new_index.insert(*g, base + k);
        }
        let specs = survivors.iter().map(|&g| {
            let faces = if dim == 0 {
                aug_face(0)
            } else {
                x.faces(g)
                    .iter()
                    .map(|f| {
                        if inside.contains(&f.gen) {
                            SimplexRef {
                                op: DegeneracyOp::to_point(f.dim()),
                                gen: Gen::new(0, 0),
                            }
                        } else {
                            SimplexRef {
                                op: f.op.clone(),
                                gen: Gen::new(f.gen.dim, new_index[&f.gen]),
                            }
                        }
                    })
                    .collect()
            };
            GenSpec::new(x.gen_name(g), faces)
        });
        if dim == 0 {
            layers[1].extend(specs);
        } else {
            layers.push(specs.collect());
        }
    }
    AugSimplicialSet::from_layers(format!("{}/~", x.name()), layers)
}

/// `Σⁿ = Δ[n] / ∂Δ[n]`.
pub fn sigma(n: i32) -> Result<AugSimplicialSet, SsetError> {
    if n < 1 {
        return Err(SsetError::Argument(format!("sigma needs n >= 1, got {n}")));
    }
    let simplex = standard_simplex(n);
    let boundary_gens: Vec<Gen> = (0..n).flat_map(|d| simplex.gens(d)).collect();
    Ok(quotient_collapse(&simplex, &boundary_gens)?.with_name(format!("Sigma{n}")))
}

/// Décalage: `dec(Y)_n = Y_{n+1}` with the operator `α` acting as
/// `α + id_[0]`. The augmentation layer is `Y_0` and a vertex `y ∈ Y_1`
/// augments to `d0 y`. The result is presented afresh: a level-`n` simplex
/// is non-degenerate unless it is `s_i d_i` of itself for some `i < n`.
pub fn dec(y: &AugSimplicialSet) -> Result<AugSimplicialSet, SsetError> {
    let point = MonotoneMap::identity(Ordinal::new(0).unwrap());
    let lift = |alpha: &MonotoneMap| ordinal_sum_map(alpha, &point);

    // level k of dec(Y) lives in Y_{k+1}
    let top = y.topdim();
    let mut index: Vec<HashMap<SimplexRef, usize>> = Vec::new();
    let mut generators: Vec<Vec<SimplexRef>> = Vec::new();
    for level in -1..=top {
        let mut gens = Vec::new();
        let mut lookup = HashMap::new();
        for z in y.simplices(level + 1) {
            let degenerate = (0..level.max(0) as usize).any(|i| {
                let face = y.act_unchecked(&z, &lift(&MonotoneMap::coface(level, i)));
                y.act_unchecked(&face, &lift(&MonotoneMap::codegeneracy(level - 1, i))) == z
            });
            if !degenerate {
                lookup.insert(z.clone(), gens.len());
                gens.push(z);
            }
        }
        index.push(lookup);
        generators.push(gens);
    }

    // normal form in dec(Y) of a level-k simplex
    fn normalize(
        y: &AugSimplicialSet,
        index: &[HashMap<SimplexRef, usize>],
        lift: &dyn Fn(&MonotoneMap) -> MonotoneMap,
        level: i32,
        z: &SimplexRef,
    ) -> SimplexRef {
        if let Some(&i) = index[(level + 1) as usize].get(z) {
            return SimplexRef::nondegenerate(Gen::new(level, i));
        }
        for i in 0..level.max(0) as usize {
            let face = y.act_unchecked(z, &lift(&MonotoneMap::coface(level, i)));
            if y.act_unchecked(&face, &lift(&MonotoneMap::codegeneracy(level - 1, i))) == *z {
                let inner = normalize(y, index, lift, level - 1, &face);
                let sigma = DegeneracyOp::from_surjection(&MonotoneMap::codegeneracy(level - 1, i))
                    .expect("codegeneracy is surjective");
                return SimplexRef {
                    op: inner.op.after(&sigma),
                    gen: inner.gen,
                };
            }
        }
        unreachable!("every level simplex is a generator or a degeneracy")
    }

    let mut layers = Vec::new();
    for level in -1..=top {
        let specs = generators[(level + 1) as usize]
            .iter()
            .map(|z| {
                let faces = (0..=level.max(-1))
                    .map(|i| {
                        let face =
                            y.act_unchecked(z, &lift(&MonotoneMap::coface(level, i as usize)));
                        normalize(y, &index, &lift, level - 1, &face)
                    })
                    .collect();
                GenSpec::new(y.simplex_label(z), faces)
            })
            .collect();
        layers.push(specs);
    }
    AugSimplicialSet::from_layers(format!("Dec({})", y.name()), layers)
}
