//! Smith normal form with unimodular transformations.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::matrix::IntegerMatrix;

/// `s = p * a * q` with `p`, `q` unimodular and `s` diagonal; the inverses
/// of both transformations are carried along so callers never invert.
#[derive(Clone, Debug)]
pub struct SmithDecomposition {
    pub s: IntegerMatrix,
    pub p: IntegerMatrix,
    pub q: IntegerMatrix,
    pub p_inv: IntegerMatrix,
    pub q_inv: IntegerMatrix,
    pub rank: usize,
    /// Invariant factors `d_1 | d_2 | ... | d_rank`, all positive.
    pub diagonal: Vec<BigInt>,
}

struct Tracker {
    a: IntegerMatrix,
    p: IntegerMatrix,
    p_inv: IntegerMatrix,
    q: IntegerMatrix,
    q_inv: IntegerMatrix,
}

impl Tracker {
    fn swap_rows(&mut self, i: usize, j: usize) {
        self.a.swap_rows(i, j);
        self.p.swap_rows(i, j);
        self.p_inv.swap_cols(i, j);
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        self.a.swap_cols(i, j);
        self.q.swap_cols(i, j);
        self.q_inv.swap_rows(i, j);
    }

    /// row[dst] += c * row[src]
    fn row_axpy(&mut self, dst: usize, c: &BigInt, src: usize) {
        self.a.row_axpy(dst, c, src);
        self.p.row_axpy(dst, c, src);
        self.p_inv.col_axpy(src, &-c, dst);
    }

    /// col[dst] += c * col[src]
    fn col_axpy(&mut self, dst: usize, c: &BigInt, src: usize) {
        self.a.col_axpy(dst, c, src);
        self.q.col_axpy(dst, c, src);
        self.q_inv.row_axpy(src, &-c, dst);
    }

    fn negate_row(&mut self, i: usize) {
        self.a.negate_row(i);
        self.p.negate_row(i);
        self.p_inv.negate_col(i);
    }

    fn min_abs_in_block(&self, k: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize)> = None;
        for i in k..self.a.rows() {
            for j in k..self.a.cols() {
                let x = &self.a[(i, j)];
                if x.is_zero() {
                    continue;
                }
                let better = match best {
                    None => true,
                    Some(b) => x.abs() < self.a[b].abs(),
                };
                if better {
                    best = Some((i, j));
                    if x.abs() == BigInt::from(1) {
                        return best;
                    }
                }
            }
        }
        best
    }
}

pub fn snf(a: &IntegerMatrix) -> SmithDecomposition {
    let (m, n) = (a.rows(), a.cols());
    let mut t = Tracker {
        a: a.clone(),
        p: IntegerMatrix::identity(m),
        p_inv: IntegerMatrix::identity(m),
        q: IntegerMatrix::identity(n),
        q_inv: IntegerMatrix::identity(n),
    };

    let mut k = 0;
    while k < m.min(n) {
        let Some((pi, pj)) = t.min_abs_in_block(k) else {
            break;
        };
        t.swap_rows(k, pi);
        t.swap_cols(k, pj);
        loop {
            let piv = t.a[(k, k)].clone();
            let mut clean = true;
            for i in k + 1..m {
                if t.a[(i, k)].is_zero() {
                    continue;
                }
                let f = t.a[(i, k)].div_floor(&piv);
                t.row_axpy(i, &-f, k);
                clean &= t.a[(i, k)].is_zero();
            }
            for j in k + 1..n {
                if t.a[(k, j)].is_zero() {
                    continue;
                }
                let f = t.a[(k, j)].div_floor(&piv);
                t.col_axpy(j, &-f, k);
                clean &= t.a[(k, j)].is_zero();
            }
            if !clean {
                // a remainder smaller than the pivot survived; pivot on it
                let (pi, pj) = t.min_abs_in_block(k).expect("block is nonzero");
                t.swap_rows(k, pi);
                t.swap_cols(k, pj);
                continue;
            }
            // divisibility: fold an offending row into row k and repeat
            let bad = (k + 1..m).find(|&i| (k + 1..n).any(|j| !t.a[(i, j)].is_multiple_of(&piv)));
            match bad {
                Some(i) => {
                    t.row_axpy(k, &BigInt::from(1), i);
                }
                None => break,
            }
        }
        if t.a[(k, k)].is_negative() {
            t.negate_row(k);
        }
        k += 1;
    }

    let diagonal = (0..k).map(|i| t.a[(i, i)].clone()).collect();
    SmithDecomposition {
        s: t.a,
        p: t.p,
        q: t.q,
        p_inv: t.p_inv,
        q_inv: t.q_inv,
        rank: k,
        diagonal,
    }
}
