//! End-to-end acceptance checks, one per criterion.
//!
//! Each check builds its objects from scratch, compares against an
//! oracle that does not share code with the construction under test
//! (Pascal's triangle, brute-force enumeration, gcds of minors), and is
//! timed against its budget. A check passes only if it is correct and
//! within budget.

use std::fmt;
use std::time::{Duration, Instant};

use itertools::Itertools;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::geom::verify_affine_simplex;
use crate::homology::{euler_characteristic, homology, smith_normal_form, IntegerMatrix};
use crate::join::{assoc_witness, join, sphere, unitor};
use crate::sset::{
    are_isomorphic, boundary, canonical_augmentation, count_maps, disjoint_union,
    internal_hom_level, s0, sigma, standard_simplex, trivial_augmentation, AugKind,
    AugSimplicialSet,
};

#[derive(Debug, Clone)]
pub struct CriterionResult {
    pub id: u8,
    pub title: &'static str,
    pub correct: bool,
    pub detail: String,
    pub notes: Vec<String>,
    pub elapsed: Duration,
    pub budget: Duration,
}

impl CriterionResult {
    pub fn passed(&self) -> bool {
        self.correct && self.elapsed <= self.budget
    }
}

impl fmt::Display for CriterionResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = if self.passed() { "PASS" } else { "FAIL" };
        write!(
            f,
            "{verdict} {:>2} {} ({:.2}s / {}s): {}",
            self.id,
            self.title,
            self.elapsed.as_secs_f64(),
            self.budget.as_secs(),
            self.detail
        )?;
        if !self.correct {
            write!(f, " [wrong result]")?;
        } else if self.elapsed > self.budget {
            write!(f, " [over budget]")?;
        }
        for note in &self.notes {
            write!(f, "\n       note: {note}")?;
        }
        Ok(())
    }
}

/// Outcome of a single check body: the verdict, a one-line summary, and
/// any notes worth surfacing.
struct Outcome {
    correct: bool,
    detail: String,
    notes: Vec<String>,
}

impl Outcome {
    fn from_failures(failures: Vec<String>, summary: String) -> Self {
        match failures.first() {
            None => Outcome {
                correct: true,
                detail: summary,
                notes: Vec::new(),
            },
            Some(first) => Outcome {
                correct: false,
                detail: format!("{} failure(s), first: {first}", failures.len()),
                notes: Vec::new(),
            },
        }
    }
}

struct Criterion {
    id: u8,
    title: &'static str,
    budget_secs: u64,
    body: fn() -> Outcome,
}

const CRITERIA: [Criterion; 10] = [
    Criterion {
        id: 1,
        title: "standard-simplex join",
        budget_secs: 10,
        body: standard_simplex_joins,
    },
    Criterion {
        id: 2,
        title: "diamond",
        budget_secs: 1,
        body: diamond,
    },
    Criterion {
        id: 3,
        title: "sphere joins",
        budget_secs: 30,
        body: sphere_joins,
    },
    Criterion {
        id: 4,
        title: "canonical augmentation counterexample",
        budget_secs: 1,
        body: counterexample,
    },
    Criterion {
        id: 5,
        title: "sigma census",
        budget_secs: 5,
        body: sigma_census,
    },
    Criterion {
        id: 6,
        title: "identity suites",
        budget_secs: 60,
        body: identity_suites,
    },
    Criterion {
        id: 7,
        title: "algebraic laws",
        budget_secs: 60,
        body: algebraic_laws,
    },
    Criterion {
        id: 8,
        title: "smith normal form oracle",
        budget_secs: 30,
        body: snf_oracle,
    },
    Criterion {
        id: 9,
        title: "affine simplex geometry",
        budget_secs: 10,
        body: geometry,
    },
    Criterion {
        id: 10,
        title: "hom levels",
        budget_secs: 10,
        body: hom_levels,
    },
];

pub fn criterion_count() -> usize {
    CRITERIA.len()
}

/// Runs criterion `id` (1-based); `None` if there is no such criterion.
pub fn run(id: u8) -> Option<CriterionResult> {
    let c = CRITERIA.iter().find(|c| c.id == id)?;
    let start = Instant::now();
    let outcome = (c.body)();
    Some(CriterionResult {
        id: c.id,
        title: c.title,
        correct: outcome.correct,
        detail: outcome.detail,
        notes: outcome.notes,
        elapsed: start.elapsed(),
        budget: Duration::from_secs(c.budget_secs),
    })
}

pub fn run_all() -> Vec<CriterionResult> {
    CRITERIA.iter().filter_map(|c| run(c.id)).collect()
}

/// The shared object pool: `Δ[k]` for `-1 <= k <= 4`, `∂Δ[k]` and `Σᵏ` for
/// `1 <= k <= 4`, `S⁰` as built directly, and `Sⁿ` for `n <= 3`.
pub fn pool() -> Vec<AugSimplicialSet> {
    let mut out: Vec<AugSimplicialSet> = (-1..=4).map(standard_simplex).collect();
    out.extend((1..=4).map(|k| boundary(k).expect("k >= 1")));
    out.extend((1..=4).map(|k| sigma(k).expect("k >= 1")));
    out.push(s0());
    out.extend((0..=3).map(sphere));
    out
}

/// The pool used for re-association, kept small because triples multiply.
pub fn small_pool() -> Vec<AugSimplicialSet> {
    vec![
        standard_simplex(-1),
        standard_simplex(0),
        standard_simplex(1),
        standard_simplex(2),
        boundary(2).expect("k >= 1"),
        sigma(1).expect("k >= 1"),
        sigma(2).expect("k >= 1"),
        s0(),
    ]
}

/// Pascal's triangle, independent of the library's closed-form binomial.
fn pascal(n: usize, k: usize) -> usize {
    let mut row = vec![1usize];
    for _ in 0..n {
        let mut next = vec![1usize; row.len() + 1];
        for i in 1..row.len() {
            next[i] = row[i - 1] + row[i];
        }
        row = next;
    }
    row.get(k).copied().unwrap_or(0)
}

/// Counts order-preserving maps `[a] -> [b]` by listing every function.
fn brute_force_monotone(a: usize, b: usize) -> usize {
    (0..a + 1)
        .map(|_| 0..b + 1)
        .multi_cartesian_product()
        .filter(|f| f.windows(2).all(|w| w[0] <= w[1]))
        .count()
}

/// Determinant by cofactor expansion; only used on minors of size at most 4.
fn cofactor_det(m: &[Vec<i128>]) -> i128 {
    match m.len() {
        0 => 1,
        1 => m[0][0],
        n => (0..n)
            .map(|j| {
                let minor: Vec<Vec<i128>> = m[1..]
                    .iter()
                    .map(|row| {
                        row.iter()
                            .enumerate()
                            .filter(|&(c, _)| c != j)
                            .map(|(_, &v)| v)
                            .collect()
                    })
                    .collect();
                let sign = if j % 2 == 0 { 1 } else { -1 };
                sign * m[0][j] * cofactor_det(&minor)
            })
            .sum(),
    }
}

/// The `k`-th determinantal divisor: the gcd of all `k x k` minors.
fn determinantal_divisor(m: &[Vec<i128>], k: usize) -> i128 {
    let (rows, cols) = (m.len(), m[0].len());
    let mut g = 0i128;
    for rs in (0..rows).combinations(k) {
        for cs in (0..cols).combinations(k) {
            let minor: Vec<Vec<i128>> = rs
                .iter()
                .map(|&i| cs.iter().map(|&j| m[i][j]).collect())
                .collect();
            g = g.gcd(&cofactor_det(&minor));
        }
    }
    g
}

fn standard_simplex_joins() -> Outcome {
    let mut failures = Vec::new();
    for p in 0..=3 {
        for q in 0..=3 {
            let j = join(&standard_simplex(p), &standard_simplex(q)).expect("simplices are valid");
            let target = standard_simplex(p + q + 1);
            match are_isomorphic(&j, &target) {
                Some(w) if w.is_isomorphism(&j, &target) => {}
                _ => failures.push(format!("no witness for D{p}.D{q}")),
            }
            let n = (p + q + 2) as usize;
            let expected: Vec<usize> = (0..=n).map(|k| pascal(n, k)).collect();
            let census = j.f_vector(true, None);
            if census != expected {
                failures.push(format!(
                    "census of D{p}.D{q} is {census:?}, expected {expected:?}"
                ));
            }
        }
    }
    Outcome::from_failures(
        failures,
        "16 joins isomorphic to D[p+q+1] with binomial census".into(),
    )
}

fn diamond() -> Outcome {
    let d = sphere(1);
    let mut failures = Vec::new();
    if d.count(0) != 4 || d.count(1) != 4 || d.topdim() != 1 {
        failures.push(format!("census {:?}", d.f_vector(true, None)));
    }
    // a 4-cycle: connected, every vertex on exactly two edges, no loops
    let mut degree = [0usize; 4];
    for e in d.gens(1) {
        let ends: Vec<usize> = d.faces(e).iter().map(|f| f.gen.index).collect();
        if ends[0] == ends[1] {
            failures.push(format!("loop at {}", d.gen_name(e)));
        }
        for v in ends {
            degree[v] += 1;
        }
    }
    if degree != [2; 4] || d.pi0() != 1 {
        failures.push(format!(
            "not a 4-cycle: degrees {degree:?}, {} components",
            d.pi0()
        ));
    }
    let h = homology(&d, false).expect("diamond is valid");
    if h.betti_numbers() != vec![1, 1] || h.has_torsion() {
        failures.push(format!(
            "homology {}",
            h.to_string().trim().replace('\n', ", ")
        ));
    }
    Outcome::from_failures(
        failures,
        "4 vertices, 4 edges in one cycle, H = (Z, Z)".into(),
    )
}

fn sphere_joins() -> Outcome {
    let mut failures = Vec::new();
    let spheres: Vec<AugSimplicialSet> = (0..=4).map(sphere).collect();
    for (n, s) in spheres.iter().enumerate() {
        let expected: Vec<usize> = (-1..=n as i32)
            .map(|k| pascal(n + 1, (k + 1) as usize) << (k + 1))
            .collect();
        if s.f_vector(true, None) != expected {
            failures.push(format!(
                "S{n} census {:?}, expected {expected:?}",
                s.f_vector(true, None)
            ));
        }
    }
    let mut pairs = 0;
    for p in 0..=3usize {
        for q in 0..=(3 - p) {
            let j = join(&spheres[p], &spheres[q]).expect("spheres are valid");
            let h = homology(&j, false).expect("join is valid");
            pairs += 1;
            if !h.is_sphere((p + q + 1) as i32) {
                failures.push(format!(
                    "S{p}.S{q}: {}",
                    h.to_string().trim().replace('\n', ", ")
                ));
            }
        }
    }
    Outcome::from_failures(
        failures,
        format!("{pairs} sphere joins have sphere homology; S0..S4 censuses binomial"),
    )
}

fn counterexample() -> Outcome {
    let two = disjoint_union(&standard_simplex(0), &standard_simplex(0)).expect("disjoint names");
    let x = canonical_augmentation(&two);
    let mut failures = Vec::new();
    let j = join(&x, &x).expect("x is valid");
    let census = j.f_vector(true, None);
    if census != vec![4, 8, 4] {
        failures.push(format!("census {census:?}"));
    }
    if j.pi0() != 4 {
        failures.push(format!("{} components", j.pi0()));
    }
    let h = homology(&j, false).expect("join is valid");
    if h.betti_numbers() != vec![4, 0] || h.has_torsion() {
        failures.push(format!(
            "homology {}",
            h.to_string().trim().replace('\n', ", ")
        ));
    }
    let t = trivial_augmentation(&two);
    if are_isomorphic(&join(&t, &t).expect("valid"), &sphere(1)).is_none() {
        failures.push("trivially augmented join is not the diamond".into());
    }
    Outcome::from_failures(
        failures,
        "census (4, 8, 4), four components, H = (Z^4, 0); trivial augmentation gives the diamond"
            .into(),
    )
}

fn sigma_census() -> Outcome {
    let mut failures = Vec::new();
    let mut notes = Vec::new();
    for (p, q) in [(1, 1), (2, 1), (2, 2), (3, 1)] {
        let j = join(&sigma(p).unwrap(), &sigma(q).unwrap()).expect("sigma is valid");
        let enumerated: Vec<i32> = j.all_gens().map(|g| g.dim).sorted().collect();
        let mut expected = vec![-1, 0, 0, 1, p, q, p + 1, q + 1, p + q + 1];
        expected.sort();
        if enumerated != expected {
            failures.push(format!(
                "Sigma{p}.Sigma{q} dims {enumerated:?}, expected {expected:?}"
            ));
        }
        let extra: Vec<String> = j
            .all_gens()
            .filter(|g| {
                let name = j.gen_name(*g);
                g.dim >= 1 && (name.ends_with("|*)") || name.starts_with("(*|"))
            })
            .map(|g| format!("{} in dim {}", j.gen_name(g), g.dim))
            .collect();
        notes.push(format!(
            "Sigma{p}.Sigma{q}: beyond the two vertices and dims 1, p+1, q+1, p+q+1 the enumeration also has {}",
            extra.join(" and ")
        ));
    }
    let s1 = sigma(1).unwrap();
    let h = homology(&join(&s1, &s1).unwrap(), false).expect("valid");
    if h.betti_numbers() != vec![1, 0, 0, 1] || h.has_torsion() {
        failures.push(format!(
            "Sigma1.Sigma1 homology {}",
            h.to_string().trim().replace('\n', ", ")
        ));
    }
    let mut outcome = Outcome::from_failures(
        failures,
        "listed dims present, extra dim-p and dim-q pairs recorded; H(Sigma1.Sigma1) = (Z, 0, 0, Z)".into(),
    );
    outcome.notes = notes;
    outcome
}

fn identity_suites() -> Outcome {
    let objects = pool();
    let mut failures = Vec::new();
    let mut checked = 0;
    for x in &objects {
        checked += 1;
        if let Some(v) = x.validate().violations.first() {
            failures.push(format!("{}: {v}", x.name()));
        }
    }
    for x in &objects {
        for y in &objects {
            checked += 1;
            match join(x, y) {
                Ok(j) => {
                    if let Some(v) = j.validate().violations.first() {
                        failures.push(format!("{}: {v}", j.name()));
                    }
                }
                Err(e) => failures.push(format!("{}.{}: {e}", x.name(), y.name())),
            }
        }
    }
    Outcome::from_failures(
        failures,
        format!("{checked} objects validated, zero violations"),
    )
}

fn algebraic_laws() -> Outcome {
    let objects = pool();
    let mut failures = Vec::new();
    for x in &objects {
        for side in [true, false] {
            if let Err(e) = unitor(x, side) {
                failures.push(format!("unitor on {}: {e}", x.name()));
            }
        }
    }
    let small = small_pool();
    let mut triples = 0;
    for x in &small {
        for y in &small {
            for z in &small {
                triples += 1;
                match assoc_witness(x, y, z) {
                    Ok(w) if w.left.validate().is_clean() && w.right.validate().is_clean() => {}
                    Ok(_) => failures.push(format!(
                        "assoc sides invalid for {}, {}, {}",
                        x.name(),
                        y.name(),
                        z.name()
                    )),
                    Err(e) => failures.push(format!(
                        "assoc for {}, {}, {}: {e}",
                        x.name(),
                        y.name(),
                        z.name()
                    )),
                }
            }
        }
    }
    let trivial: Vec<&AugSimplicialSet> = objects
        .iter()
        .filter(|x| x.aug_kind() == AugKind::Trivial)
        .collect();
    let mut pairs = 0;
    for x in &trivial {
        for y in &trivial {
            pairs += 1;
            let j = join(x, y).expect("pool is valid");
            let lhs = euler_characteristic(&j, true);
            let rhs = -euler_characteristic(x, true) * euler_characteristic(y, true);
            if lhs != rhs {
                failures.push(format!(
                    "reduced Euler of {} is {lhs}, expected {rhs}",
                    j.name()
                ));
            }
        }
    }
    Outcome::from_failures(
        failures,
        format!(
            "{} unitors, {triples} re-associations, {pairs} reduced Euler products",
            objects.len() * 2
        ),
    )
}

pub const SNF_SEED: u64 = 0x5eed_0008;

fn snf_oracle() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SNF_SEED);
    let mut failures = Vec::new();
    let mut minors_checked = 0;
    for trial in 0..200 {
        let rows = rng.random_range(1..=8);
        let cols = rng.random_range(1..=8);
        let data: Vec<Vec<i128>> = (0..rows)
            .map(|_| (0..cols).map(|_| rng.random_range(-9..=9)).collect())
            .collect();
        let m = IntegerMatrix::from_rows(&data);
        let s = smith_normal_form(&m);
        if !s.verify(&m) {
            failures.push(format!("trial {trial}: U M V = D or divisibility fails"));
            continue;
        }
        for k in 1..=rows.min(cols).min(4) {
            let product: BigInt = if k <= s.rank {
                s.divisors[..k].iter().product()
            } else {
                BigInt::zero()
            };
            let oracle = BigInt::from(determinantal_divisor(&data, k));
            minors_checked += 1;
            if product.abs() != oracle {
                failures.push(format!(
                    "trial {trial}: D_{k} = {oracle}, divisors give {product}"
                ));
            }
        }
    }
    Outcome::from_failures(
        failures,
        format!("200 matrices reduced exactly, {minors_checked} determinantal divisors match"),
    )
}

pub const GEOM_SEED: u64 = 2024;

fn geometry() -> Outcome {
    let mut failures = Vec::new();
    for p in 0..=2 {
        for q in 0..=2 {
            let report = verify_affine_simplex(p, q, 10_000, GEOM_SEED);
            if let Some(f) = report.failures.first() {
                failures.push(format!("p={p} q={q}: {} at r={}", f.kind, f.r));
            }
        }
    }
    Outcome::from_failures(failures, "9 simplex pairs, 10^4 samples each".into())
}

fn hom_levels() -> Outcome {
    let mut failures = Vec::new();
    let point = standard_simplex(0);
    for n in 0..=4 {
        let count = count_maps(&point, &standard_simplex(n));
        if count != brute_force_monotone(0, n as usize) {
            failures.push(format!("|ASS(D0, D{n})| = {count}"));
        }
    }
    let interval = standard_simplex(1);
    for n in 0..=3usize {
        match internal_hom_level(&point, &interval, n) {
            Ok(v) if v == brute_force_monotone(n + 1, 1) => {}
            Ok(v) => failures.push(format!(
                "[D0, D1]_{n} = {v}, expected {}",
                brute_force_monotone(n + 1, 1)
            )),
            Err(e) => failures.push(format!("[D0, D1]_{n}: {e}")),
        }
    }
    Outcome::from_failures(
        failures,
        "point maps into D[n] and hom levels [D0, D1]_n match enumeration".into(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn oracles_agree_with_closed_forms() {
        assert_eq!(pascal(6, 3), 20);
        assert_eq!(pascal(3, 5), 0);
        assert_eq!(brute_force_monotone(2, 1), 4);
        assert_eq!(brute_force_monotone(1, 3), 10);
        let m = vec![vec![2, 4], vec![6, 8]];
        assert_eq!(determinantal_divisor(&m, 1), 2);
        assert_eq!(determinantal_divisor(&m, 2), 8);
        assert_eq!(
            cofactor_det(&[vec![2, -1, 0], vec![-1, 2, -1], vec![0, -1, 2]]),
            4
        );
    }

    #[test]
    fn pool_shape() {
        assert_eq!(pool().len(), 19);
        assert!(pool().iter().all(|x| x.validate().is_clean()));
        assert_eq!(criterion_count(), 10);
        assert!(run(11).is_none());
    }
}
