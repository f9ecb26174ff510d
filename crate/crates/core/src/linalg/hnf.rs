//! Row-style Hermite normal form.

use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::matrix::IntegerMatrix;

/// Basis of a lattice in Hermite normal form: pivots strictly increase,
/// every pivot is positive, and entries above a pivot lie in `[0, pivot)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HermiteBasis {
    pub h: IntegerMatrix,
    /// Pivot column of each row.
    pub pivots: Vec<usize>,
}

impl HermiteBasis {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Checks the defining conditions of the form.
    pub fn is_valid(&self) -> bool {
        let h = &self.h;
        if h.rows() != self.pivots.len() {
            return false;
        }
        for (j, &p) in self.pivots.iter().enumerate() {
            if j > 0 && self.pivots[j - 1] >= p {
                return false;
            }
            if (0..p).any(|i| !h[(j, i)].is_zero()) || !h[(j, p)].is_positive() {
                return false;
            }
            for k in 0..j {
                let x = &h[(k, p)];
                if x.is_negative() || x >= &h[(j, p)] {
                    return false;
                }
            }
        }
        true
    }
}

pub fn hnf(a: &IntegerMatrix) -> HermiteBasis {
    let mut h = a.clone();
    let (m, n) = (h.rows(), h.cols());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..n {
        if r == m {
            break;
        }
        loop {
            let best = (r..m)
                .filter(|&i| !h[(i, c)].is_zero())
                .min_by(|&i, &j| h[(i, c)].abs().cmp(&h[(j, c)].abs()));
            let Some(b) = best else { break };
            h.swap_rows(r, b);
            let mut done = true;
            for i in r + 1..m {
                if h[(i, c)].is_zero() {
                    continue;
                }
                let f = h[(i, c)].div_floor(&h[(r, c)]);
                h.row_axpy(i, &-f, r);
                done &= h[(i, c)].is_zero();
            }
            if done {
                break;
            }
        }
        if h[(r, c)].is_zero() {
            continue;
        }
        if h[(r, c)].is_negative() {
            h.negate_row(r);
        }
        for k in 0..r {
            let f = h[(k, c)].div_floor(&h[(r, c)]);
            h.row_axpy(k, &-f, r);
        }
        pivots.push(c);
        r += 1;
    }
    let idx: Vec<usize> = (0..r).collect();
    HermiteBasis {
        h: h.select_rows(&idx),
        pivots,
    }
}
