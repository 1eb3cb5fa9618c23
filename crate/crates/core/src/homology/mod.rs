//! Integral homology of finite augmented simplicial sets through the
//! normalized chain complex and Smith normal form.
//!
//! Chains in degree `k` are spanned by the non-degenerate `k`-simplices;
//! a face whose normal form is degenerate contributes nothing. The reduced
//! complex adds degree `-1`, spanned by the augmentation layer, with `∂0`
//! sending a vertex to its augmentation value.

use std::fmt;

use num_bigint::BigInt;
use num_traits::One;
use thiserror::Error;

use crate::sset::{AugSimplicialSet, SsetError};

mod matrix;
mod snf;

pub use matrix::IntegerMatrix;
pub use snf::{smith_normal_form, SmithForm};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HomologyError {
    #[error("refusing an invalid simplicial set: {0}")]
    Invalid(#[from] SsetError),
    #[error("boundary of boundary is nonzero in degree {0}")]
    NotAComplex(i32),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainComplex {
    /// Lowest degree: `-1` for the reduced complex, else `0`.
    pub min_dim: i32,
    /// `ranks[k - min_dim]` is the rank of the chain group in degree `k`.
    pub ranks: Vec<usize>,
    /// `boundaries[k - min_dim - 1]` is `∂_k`, of shape
    /// `rank(k - 1) x rank(k)`.
    pub boundaries: Vec<IntegerMatrix>,
}

impl ChainComplex {
    pub fn max_dim(&self) -> i32 {
        self.min_dim + self.ranks.len() as i32 - 1
    }

    pub fn rank(&self, k: i32) -> usize {
        if k < self.min_dim || k > self.max_dim() {
            return 0;
        }
        self.ranks[(k - self.min_dim) as usize]
    }

    /// `∂_k`, or `None` outside the complex.
    pub fn boundary(&self, k: i32) -> Option<&IntegerMatrix> {
        if k <= self.min_dim {
            return None;
        }
        self.boundaries.get((k - self.min_dim - 1) as usize)
    }
}

pub fn chain_complex(x: &AugSimplicialSet, reduced: bool) -> Result<ChainComplex, HomologyError> {
    x.validate().into_result()?;
    let min_dim = if reduced { -1 } else { 0 };
    let top = x.topdim().max(min_dim - 1);
    let ranks: Vec<usize> = (min_dim..=top).map(|k| x.count(k)).collect();
    let mut boundaries = Vec::new();
    for k in (min_dim + 1)..=top {
        let mut m = IntegerMatrix::zeros(x.count(k - 1), x.count(k));
        for g in x.gens(k) {
            for (i, face) in x.faces(g).iter().enumerate() {
                if face.is_degenerate() {
                    continue;
                }
                let sign = if i % 2 == 0 {
                    BigInt::one()
                } else {
                    -BigInt::one()
                };
                m[(face.gen.index, g.index)] += sign;
            }
        }
        boundaries.push(m);
    }
    for (offset, w) in boundaries.windows(2).enumerate() {
        if !w[0].mul(&w[1]).is_zero() {
            return Err(HomologyError::NotAComplex(min_dim + 2 + offset as i32));
        }
    }
    Ok(ChainComplex {
        min_dim,
        ranks,
        boundaries,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomologyGroup {
    pub betti: usize,
    /// Torsion coefficients greater than 1, each dividing the next.
    pub torsion: Vec<BigInt>,
}

impl HomologyGroup {
    pub fn is_trivial(&self) -> bool {
        self.betti == 0 && self.torsion.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomologyResult {
    pub min_dim: i32,
    pub groups: Vec<HomologyGroup>,
}

impl HomologyResult {
    /// The group in degree `k`; zero outside the computed range.
    pub fn group(&self, k: i32) -> HomologyGroup {
        if k < self.min_dim {
            return HomologyGroup {
                betti: 0,
                torsion: Vec::new(),
            };
        }
        self.groups
            .get((k - self.min_dim) as usize)
            .cloned()
            .unwrap_or(HomologyGroup {
                betti: 0,
                torsion: Vec::new(),
            })
    }

    pub fn betti(&self, k: i32) -> usize {
        self.group(k).betti
    }

    pub fn betti_numbers(&self) -> Vec<usize> {
        self.groups.iter().map(|g| g.betti).collect()
    }

    pub fn has_torsion(&self) -> bool {
        self.groups.iter().any(|g| !g.torsion.is_empty())
    }

    /// Unreduced homology of the `n`-sphere: `Z` in degrees 0 and `n` (or
    /// `Z^2` in degree 0 when `n = 0`), nothing else.
    pub fn is_sphere(&self, n: i32) -> bool {
        let top = self.min_dim + self.groups.len() as i32 - 1;
        (self.min_dim..=top.max(n)).all(|k| {
            let g = self.group(k);
            let expected = match (k, n) {
                (0, 0) => 2,
                (0, _) => 1,
                (k, n) if k == n => 1,
                _ => 0,
            };
            g.torsion.is_empty() && g.betti == expected
        }) && self.min_dim == 0
    }
}

impl fmt::Display for HomologyResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (offset, g) in self.groups.iter().enumerate() {
            write!(f, "H{} = Z^{}", self.min_dim + offset as i32, g.betti)?;
            for t in &g.torsion {
                write!(f, " + Z/{t}")?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// `betti_k = rank C_k - rank ∂_k - rank ∂_{k+1}`, torsion from the
/// divisors of `∂_{k+1}`.
pub fn homology_of(complex: &ChainComplex) -> HomologyResult {
    let forms: Vec<SmithForm> = complex.boundaries.iter().map(smith_normal_form).collect();
    let form = |k: i32| -> Option<&SmithForm> {
        if k <= complex.min_dim {
            return None;
        }
        forms.get((k - complex.min_dim - 1) as usize)
    };
    let groups = (complex.min_dim..=complex.max_dim())
        .map(|k| {
            let incoming = form(k).map_or(0, |s| s.rank);
            let outgoing = form(k + 1);
            HomologyGroup {
                betti: complex.rank(k) - incoming - outgoing.map_or(0, |s| s.rank),
                torsion: outgoing
                    .map(|s| s.divisors.iter().filter(|d| !d.is_one()).cloned().collect())
                    .unwrap_or_default(),
            }
        })
        .collect();
    HomologyResult {
        min_dim: complex.min_dim,
        groups,
    }
}

pub fn homology(x: &AugSimplicialSet, reduced: bool) -> Result<HomologyResult, HomologyError> {
    Ok(homology_of(&chain_complex(x, reduced)?))
}

/// `Σ (-1)^k nd_k` over `k >= 0`; the reduced variant also counts the
/// augmentation layer with sign `-1`.
pub fn euler_characteristic(x: &AugSimplicialSet, reduced: bool) -> i64 {
    let start = if reduced { -1 } else { 0 };
    (start..=x.topdim())
        .map(|k| {
            let n = x.count(k) as i64;
            if k.rem_euclid(2) == 0 {
                n
            } else {
                -n
            }
        })
        .sum()
}

/// Alternating sum of Betti numbers, the homological side of the Euler
/// characteristic.
pub fn betti_euler(h: &HomologyResult) -> i64 {
    h.groups
        .iter()
        .enumerate()
        .map(|(offset, g)| {
            let k = h.min_dim + offset as i32;
            let b = g.betti as i64;
            if k.rem_euclid(2) == 0 {
                b
            } else {
                -b
            }
        })
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::join::{join, sphere};
    use crate::sset::{
        boundary, canonical_augmentation, disjoint_union, s0, sigma, standard_simplex,
    };

    #[test]
    fn interval_boundary() {
        let c = chain_complex(&standard_simplex(1), false).unwrap();
        assert_eq!(
            c.boundary(1).unwrap(),
            &IntegerMatrix::from_rows(&[vec![-1], vec![1]])
        );
    }

    #[test]
    fn collapsed_faces_contribute_nothing() {
        let c = chain_complex(&sigma(2).unwrap(), false).unwrap();
        assert!(c.boundary(1).is_none_or(IntegerMatrix::is_zero));
        assert!(c.boundary(2).unwrap().is_zero());
    }

    #[test]
    fn diamond_incidence() {
        let d = sphere(1);
        let c = chain_complex(&d, false).unwrap();
        let b = c.boundary(1).unwrap();
        assert_eq!((b.rows(), b.cols()), (4, 4));
        for j in 0..4 {
            let column: Vec<i64> = (0..4).map(|i| i64::try_from(&b[(i, j)]).unwrap()).collect();
            assert_eq!(column.iter().sum::<i64>(), 0);
            assert_eq!(column.iter().filter(|&&v| v != 0).count(), 2);
        }
        // each vertex meets two edges
        for i in 0..4 {
            assert_eq!((0..4).filter(|&j| b[(i, j)] != BigInt::from(0)).count(), 2);
        }
    }

    #[test]
    fn sphere_homology() {
        let h = homology(&sphere(2), false).unwrap();
        assert_eq!(h.betti_numbers(), vec![1, 0, 1]);
        assert!(h.is_sphere(2));
        assert!(homology(&sphere(3), false).unwrap().is_sphere(3));
        assert!(homology(&boundary(3).unwrap(), false).unwrap().is_sphere(2));
        assert!(homology(&sigma(2).unwrap(), false).unwrap().is_sphere(2));
        assert!(homology(&s0(), false).unwrap().is_sphere(0));
    }

    #[test]
    fn counterexample_homology() {
        let two = disjoint_union(&standard_simplex(0), &standard_simplex(0)).unwrap();
        let x = canonical_augmentation(&two);
        let h = homology(&join(&x, &x).unwrap(), false).unwrap();
        assert_eq!(h.betti_numbers(), vec![4, 0]);
    }

    #[test]
    fn join_of_circles() {
        let s1 = sigma(1).unwrap();
        let h = homology(&join(&s1, &s1).unwrap(), false).unwrap();
        assert_eq!(h.betti_numbers(), vec![1, 0, 0, 1]);
        assert!(h.is_sphere(3));
    }

    #[test]
    fn reduced_homology() {
        for x in [standard_simplex(3), sphere(2), sigma(3).unwrap()] {
            let full = homology(&x, false).unwrap();
            let red = homology(&x, true).unwrap();
            assert_eq!(full.betti(0), red.betti(0) + 1);
            assert_eq!(red.betti(-1), 0);
        }
        let h = homology(&standard_simplex(-1), true).unwrap();
        assert_eq!(h.betti(-1), 1);
    }

    #[test]
    fn euler_characteristics() {
        assert_eq!(euler_characteristic(&standard_simplex(4), false), 1);
        assert_eq!(euler_characteristic(&sphere(2), false), 2);
        assert_eq!(euler_characteristic(&sphere(1), false), 0);
        assert_eq!(euler_characteristic(&sphere(1), true), -1);
        for x in [sphere(3), sigma(2).unwrap(), boundary(4).unwrap(), s0()] {
            let h = homology(&x, false).unwrap();
            assert_eq!(betti_euler(&h), euler_characteristic(&x, false));
        }
    }

    #[test]
    fn torsion_is_reported() {
        // Z --2--> Z --0--> Z: H1 = Z/2
        let complex = ChainComplex {
            min_dim: 0,
            ranks: vec![1, 1, 1],
            boundaries: vec![
                IntegerMatrix::from_rows(&[vec![0]]),
                IntegerMatrix::from_rows(&[vec![2]]),
            ],
        };
        let h = homology_of(&complex);
        assert_eq!(h.to_string(), "H0 = Z^1\nH1 = Z^0 + Z/2\nH2 = Z^0\n");
        assert!(h.has_torsion());
        assert!(!h.is_sphere(2));
    }
}
