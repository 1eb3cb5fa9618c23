//! Smith normal form over the integers.
//!
//! Pivots are the nonzero entries of least absolute value in the remaining
//! block, ties broken by row-major position. The pivot row and column are
//! cleared by Euclidean steps; whenever a remainder survives the loop picks
//! a smaller pivot. Before a pivot is accepted every entry of the remaining
//! block must be divisible by it, which yields the divisibility chain.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::IntegerMatrix;

/// `u * m * v = d` with `u`, `v` unimodular and `d` diagonal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SmithForm {
    pub d: IntegerMatrix,
    pub u: IntegerMatrix,
    pub v: IntegerMatrix,
    pub rank: usize,
    /// The nonzero diagonal entries, positive, each dividing the next.
    pub divisors: Vec<BigInt>,
}

impl SmithForm {
    /// Re-multiplies `u * m * v` exactly and checks the shape of `d`.
    pub fn verify(&self, m: &IntegerMatrix) -> bool {
        let chain = self.divisors.windows(2).all(|w| w[1].is_multiple_of(&w[0]));
        let positive = self.divisors.iter().all(Signed::is_positive);
        let diagonal_matches = self.d.is_diagonal()
            && self
                .d
                .diagonal()
                .iter()
                .filter(|v| !v.is_zero())
                .cloned()
                .collect::<Vec<_>>()
                == self.divisors;
        let unimodular = |x: &IntegerMatrix| x.determinant().abs().is_one();
        chain
            && positive
            && diagonal_matches
            && unimodular(&self.u)
            && unimodular(&self.v)
            && self.u.mul(m).mul(&self.v) == self.d
    }
}

fn min_pivot(a: &IntegerMatrix, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<((usize, usize), BigInt)> = None;
    for i in t..a.rows() {
        for j in t..a.cols() {
            let v = &a[(i, j)];
            if v.is_zero() {
                continue;
            }
            let abs = v.abs();
            if best.as_ref().is_none_or(|(_, b)| abs < *b) {
                best = Some(((i, j), abs));
            }
        }
    }
    best.map(|(pos, _)| pos)
}

pub fn smith_normal_form(m: &IntegerMatrix) -> SmithForm {
    let mut a = m.clone();
    let mut u = IntegerMatrix::identity(m.rows());
    let mut v = IntegerMatrix::identity(m.cols());
    let mut rank = 0;

    for t in 0..m.rows().min(m.cols()) {
        let Some(_) = min_pivot(&a, t) else {
            break;
        };
        loop {
            let (pi, pj) = min_pivot(&a, t).expect("block is nonzero");
            a.swap_rows(t, pi);
            u.swap_rows(t, pi);
            a.swap_cols(t, pj);
            v.swap_cols(t, pj);

            let pivot = a[(t, t)].clone();
            let mut clean = true;
            for i in t + 1..a.rows() {
                if a[(i, t)].is_zero() {
                    continue;
                }
                let q = -(&a[(i, t)] / &pivot);
                a.add_row_multiple(i, t, &q);
                u.add_row_multiple(i, t, &q);
                clean &= a[(i, t)].is_zero();
            }
            for j in t + 1..a.cols() {
                if a[(t, j)].is_zero() {
                    continue;
                }
                let q = -(&a[(t, j)] / &pivot);
                a.add_col_multiple(j, t, &q);
                v.add_col_multiple(j, t, &q);
                clean &= a[(t, j)].is_zero();
            }
            if !clean {
                continue;
            }
            let offender = (t + 1..a.rows())
                .find(|&i| (t + 1..a.cols()).any(|j| !a[(i, j)].is_multiple_of(&pivot)));
            if let Some(i) = offender {
                let one = BigInt::one();
                a.add_row_multiple(t, i, &one);
                u.add_row_multiple(t, i, &one);
                continue;
            }
            break;
        }
        if a[(t, t)].is_negative() {
            a.negate_row(t);
            u.negate_row(t);
        }
        rank += 1;
    }

    let divisors = (0..rank).map(|i| a[(i, i)].clone()).collect();
    SmithForm {
        d: a,
        u,
        v,
        rank,
        divisors,
    }
}
