//! Coordinates for the join of two standard simplices.
//!
//! A point `r·u + s·v` of `Δ^p * Δ^q` maps to the barycentric point
//! `(r·u_0, …, r·u_p, s·v_0, …, s·v_q)` of `Δ^{p+q+1}`. When `r = 0` the
//! left point is irrelevant, and likewise the right point when `s = 0`.
//! [`verify_affine_simplex`] checks on seeded samples that this map lands in
//! the simplex, is injective once those identifications are made, and sends
//! join vertices to the standard basis in the same order as the
//! combinatorial isomorphism `Δ[p] ⊙ Δ[q] ≅ Δ[p+q+1]`.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::join::join_traced;
use crate::sset::{are_isomorphic, standard_simplex};

pub const SUM_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GeomError {
    #[error("barycentric coordinates must be non-negative, got {0:?}")]
    Negative(Vec<f64>),
    #[error("barycentric coordinates sum to {sum}, not 1")]
    BadSum { sum: f64 },
    #[error("join parameter r = {0} is outside [0, 1]")]
    BadParameter(f64),
    #[error("a point needs at least one coordinate")]
    Empty,
}

/// Barycentric coordinates in a standard simplex.
#[derive(Debug, Clone, PartialEq)]
pub struct BaryPoint(Vec<f64>);

impl BaryPoint {
    pub fn new(coords: Vec<f64>) -> Result<Self, GeomError> {
        if coords.is_empty() {
            return Err(GeomError::Empty);
        }
        if coords.iter().any(|&c| c < 0.0 || c.is_nan()) {
            return Err(GeomError::Negative(coords));
        }
        let sum: f64 = coords.iter().sum();
        if (sum - 1.0).abs() > SUM_TOLERANCE {
            return Err(GeomError::BadSum { sum });
        }
        Ok(BaryPoint(coords))
    }

    /// The `i`-th vertex of `Δ^dim`.
    pub fn vertex(dim: usize, i: usize) -> Self {
        let mut coords = vec![0.0; dim + 1];
        coords[i] = 1.0;
        BaryPoint(coords)
    }

    pub fn barycenter(dim: usize) -> Self {
        BaryPoint(vec![1.0 / (dim + 1) as f64; dim + 1])
    }

    pub fn coords(&self) -> &[f64] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len() - 1
    }
}

/// A point `(r, u, s, v)` of a join with `r + s = 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct JoinPoint {
    r: f64,
    left: BaryPoint,
    right: BaryPoint,
}

impl JoinPoint {
    pub fn new(r: f64, left: BaryPoint, right: BaryPoint) -> Result<Self, GeomError> {
        if !(0.0..=1.0).contains(&r) {
            return Err(GeomError::BadParameter(r));
        }
        Ok(JoinPoint { r, left, right })
    }

    pub fn r(&self) -> f64 {
        self.r
    }

    pub fn s(&self) -> f64 {
        1.0 - self.r
    }

    pub fn left(&self) -> &BaryPoint {
        &self.left
    }

    pub fn right(&self) -> &BaryPoint {
        &self.right
    }

    /// The data that actually determines the point: the left factor only
    /// when `r > 0`, the right only when `s > 0`.
    pub fn essential(&self) -> (f64, Option<&BaryPoint>, Option<&BaryPoint>) {
        (
            self.r,
            (self.r > 0.0).then_some(&self.left),
            (self.s() > 0.0).then_some(&self.right),
        )
    }
}

pub fn join_map_f(pt: &JoinPoint) -> BaryPoint {
    let (r, s) = (pt.r(), pt.s());
    let coords = pt
        .left
        .coords()
        .iter()
        .map(|&u| r * u)
        .chain(pt.right.coords().iter().map(|&v| s * v))
        .collect();
    BaryPoint(coords)
}

/// Left inverse of [`join_map_f`] on essential data: recovers `r` and
/// whichever factors are determined.
pub fn join_map_inverse(image: &BaryPoint, p: usize) -> (f64, Option<Vec<f64>>, Option<Vec<f64>>) {
    let (head, tail) = image.coords().split_at(p + 1);
    let r: f64 = head.iter().sum();
    let s: f64 = tail.iter().sum();
    let left = (r > 0.0).then(|| head.iter().map(|c| c / r).collect());
    let right = (s > 0.0).then(|| tail.iter().map(|c| c / s).collect());
    (r, left, right)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FailureKind {
    OutsideSimplex,
    SumMismatch,
    NotInjective,
    IdentificationBroken,
    VertexMismatch,
}

impl fmt::Display for FailureKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FailureKind::OutsideSimplex => "outside simplex",
            FailureKind::SumMismatch => "sum mismatch",
            FailureKind::NotInjective => "not injective",
            FailureKind::IdentificationBroken => "identification broken",
            FailureKind::VertexMismatch => "vertex mismatch",
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct GeomFailure {
    pub kind: FailureKind,
    pub r: f64,
    pub left: Vec<f64>,
    pub right: Vec<f64>,
    pub image: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct VertexRow {
    pub label: String,
    pub image: Vec<f64>,
    /// Index of the matching vertex of `Δ[p+q+1]` under the combinatorial
    /// isomorphism.
    pub combinatorial: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct AffineReport {
    pub p: usize,
    pub q: usize,
    pub samples: usize,
    pub seed: u64,
    pub identified_pairs: usize,
    pub failures: Vec<GeomFailure>,
    pub vertices: Vec<VertexRow>,
}

impl AffineReport {
    pub fn is_clean(&self) -> bool {
        self.failures.is_empty()
    }
}

fn fmt_coords(c: &[f64]) -> String {
    let parts: Vec<String> = c.iter().map(|v| format!("{v:.17}")).collect();
    format!("({})", parts.join(", "))
}

impl fmt::Display for AffineReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "join of simplices p={} q={}", self.p, self.q)?;
        writeln!(f, "samples: {} (seed {})", self.samples, self.seed)?;
        writeln!(f, "identified pairs checked: {}", self.identified_pairs)?;
        writeln!(f, "failures: {}", self.failures.len())?;
        for x in &self.failures {
            writeln!(
                f,
                "  {}: r={:.17} left={} right={} image={}",
                x.kind,
                x.r,
                fmt_coords(&x.left),
                fmt_coords(&x.right),
                fmt_coords(&x.image)
            )?;
        }
        writeln!(f, "vertices:")?;
        for v in &self.vertices {
            let image: Vec<String> = v.image.iter().map(|c| format!("{c}")).collect();
            writeln!(
                f,
                "  {} -> ({}) [vertex {}]",
                v.label,
                image.join(", "),
                v.combinatorial
            )?;
        }
        Ok(())
    }
}

fn random_bary(rng: &mut ChaCha8Rng, dim: usize) -> BaryPoint {
    // exponential spacings give a uniform point of the simplex
    let raw: Vec<f64> = (0..=dim)
        .map(|_| -(1.0 - rng.random::<f64>()).ln())
        .collect();
    let total: f64 = raw.iter().sum();
    let mut coords: Vec<f64> = raw.iter().map(|x| x / total).collect();
    // absorb rounding so the coordinates sum to 1 within tolerance
    let drift: f64 = 1.0 - coords.iter().sum::<f64>();
    coords[0] = (coords[0] + drift).max(0.0);
    BaryPoint(coords)
}

fn random_point(rng: &mut ChaCha8Rng, p: usize, q: usize) -> JoinPoint {
    let r = match rng.random_range(0..10) {
        0 => 0.0,
        1 => 1.0,
        _ => rng.random::<f64>(),
    };
    JoinPoint {
        r,
        left: random_bary(rng, p),
        right: random_bary(rng, q),
    }
}

fn failure(kind: FailureKind, pt: &JoinPoint, image: &BaryPoint) -> GeomFailure {
    GeomFailure {
        kind,
        r: pt.r,
        left: pt.left.coords().to_vec(),
        right: pt.right.coords().to_vec(),
        image: image.coords().to_vec(),
    }
}

fn close(a: &[f64], b: &[f64], tol: f64) -> bool {
    a.len() == b.len() && a.iter().zip(b).all(|(x, y)| (x - y).abs() <= tol)
}

/// Samples `samples` seeded points of `Δ^p * Δ^q` and checks the join map.
pub fn verify_affine_simplex(p: usize, q: usize, samples: usize, seed: u64) -> AffineReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut failures = Vec::new();
    let mut identified_pairs = 0;

    for _ in 0..samples {
        let pt = random_point(&mut rng, p, q);
        let image = join_map_f(&pt);
        let coords = image.coords();
        if coords.len() != p + q + 2 || coords.iter().any(|&c| c < 0.0) {
            failures.push(failure(FailureKind::OutsideSimplex, &pt, &image));
            continue;
        }
        if (coords.iter().sum::<f64>() - 1.0).abs() > SUM_TOLERANCE {
            failures.push(failure(FailureKind::SumMismatch, &pt, &image));
        }

        // injectivity: the essential data is recovered from the image
        let (r, left, right) = join_map_inverse(&image, p);
        let (er, eleft, eright) = pt.essential();
        let recovered = (r - er).abs() <= SUM_TOLERANCE
            && match (&left, eleft) {
                (Some(l), Some(e)) => close(l, e.coords(), SUM_TOLERANCE * (1.0 + 1.0 / er)),
                (None, None) => true,
                _ => false,
            }
            && match (&right, eright) {
                (Some(l), Some(e)) => {
                    close(l, e.coords(), SUM_TOLERANCE * (1.0 + 1.0 / (1.0 - er)))
                }
                (None, None) => true,
                _ => false,
            };
        if !recovered {
            failures.push(failure(FailureKind::NotInjective, &pt, &image));
        }

        // points that differ only in an ignored factor must share an image
        if pt.r == 0.0 || pt.r == 1.0 {
            let mut twin = pt.clone();
            if pt.r == 0.0 {
                twin.left = random_bary(&mut rng, p);
            } else {
                twin.right = random_bary(&mut rng, q);
            }
            identified_pairs += 1;
            if join_map_f(&twin) != image {
                failures.push(failure(
                    FailureKind::IdentificationBroken,
                    &twin,
                    &join_map_f(&twin),
                ));
            }
        }
    }

    let vertices = vertex_table(p, q, &mut failures);
    AffineReport {
        p,
        q,
        samples,
        seed,
        identified_pairs,
        failures,
        vertices,
    }
}

/// Images of the `p + q + 2` join vertices, checked against the standard
/// basis and against the combinatorial isomorphism.
fn vertex_table(p: usize, q: usize, failures: &mut Vec<GeomFailure>) -> Vec<VertexRow> {
    let joined = join_traced(&standard_simplex(p as i32), &standard_simplex(q as i32))
        .expect("simplices are valid");
    let target = standard_simplex((p + q + 1) as i32);
    let iso = are_isomorphic(&joined.set, &target);

    let mut rows = Vec::new();
    let corners = (0..=p)
        .map(|i| (true, i))
        .chain((0..=q).map(|j| (false, j)));
    for (slot, (is_left, i)) in corners.enumerate() {
        let pt = if is_left {
            JoinPoint {
                r: 1.0,
                left: BaryPoint::vertex(p, i),
                right: BaryPoint::barycenter(q),
            }
        } else {
            JoinPoint {
                r: 0.0,
                left: BaryPoint::barycenter(p),
                right: BaryPoint::vertex(q, i),
            }
        };
        let image = join_map_f(&pt);
        let label = if is_left {
            format!("({i}|*)")
        } else {
            format!("(*|{i})")
        };
        let combinatorial = joined
            .set
            .find(&label)
            .zip(iso.as_ref())
            .map(|(g, m)| m.image(g).gen.index)
            .unwrap_or(usize::MAX);
        if image != BaryPoint::vertex(p + q + 1, slot) || combinatorial != slot {
            failures.push(failure(FailureKind::VertexMismatch, &pt, &image));
        }
        rows.push(VertexRow {
            label,
            image: image.coords().to_vec(),
            combinatorial,
        });
    }
    rows
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bary(c: &[f64]) -> BaryPoint {
        BaryPoint::new(c.to_vec()).unwrap()
    }

    #[test]
    fn full_weight_on_the_left() {
        let pt = JoinPoint::new(1.0, bary(&[0.25, 0.75]), bary(&[1.0, 0.0, 0.0])).unwrap();
        assert_eq!(join_map_f(&pt).coords(), &[0.25, 0.75, 0.0, 0.0, 0.0]);
    }

    #[test]
    fn barycenters_meet_in_the_middle() {
        let pt = JoinPoint::new(0.5, BaryPoint::barycenter(1), BaryPoint::barycenter(1)).unwrap();
        assert_eq!(join_map_f(&pt).coords(), &[0.25; 4]);
    }

    #[test]
    fn mixed_weights() {
        let pt = JoinPoint::new(1.0 / 3.0, bary(&[1.0, 0.0]), bary(&[0.0, 0.0, 1.0])).unwrap();
        let image = join_map_f(&pt);
        let expected = [1.0 / 3.0, 0.0, 0.0, 0.0, 2.0 / 3.0];
        assert!(close(image.coords(), &expected, 1e-15));
    }

    #[test]
    fn rejects_bad_points() {
        assert!(matches!(
            BaryPoint::new(vec![0.5, 0.6]),
            Err(GeomError::BadSum { .. })
        ));
        assert!(matches!(
            BaryPoint::new(vec![-0.5, 1.5]),
            Err(GeomError::Negative(_))
        ));
        assert!(JoinPoint::new(1.5, BaryPoint::barycenter(0), BaryPoint::barycenter(0)).is_err());
    }

    #[test]
    fn ignored_factors_are_identified() {
        let a = JoinPoint::new(0.0, bary(&[1.0, 0.0]), bary(&[0.5, 0.5])).unwrap();
        let b = JoinPoint::new(0.0, bary(&[0.0, 1.0]), bary(&[0.5, 0.5])).unwrap();
        assert_eq!(join_map_f(&a), join_map_f(&b));
        assert_eq!(a.essential(), (0.0, None, Some(&bary(&[0.5, 0.5]))));
    }

    #[test]
    fn point_join_point_is_an_interval() {
        let report = verify_affine_simplex(0, 0, 100, 1);
        assert!(report.is_clean(), "{report}");
        assert_eq!(report.vertices[0].image, vec![1.0, 0.0]);
        assert_eq!(report.vertices[1].image, vec![0.0, 1.0]);
    }

    #[test]
    fn larger_sweep_is_clean_and_deterministic() {
        let a = verify_affine_simplex(1, 2, 10_000, 7);
        assert!(a.is_clean(), "{a}");
        assert!(a.identified_pairs > 0);
        assert_eq!(a, verify_affine_simplex(1, 2, 10_000, 7));
        assert_eq!(
            a.to_string(),
            verify_affine_simplex(1, 2, 10_000, 7).to_string()
        );
    }
}
