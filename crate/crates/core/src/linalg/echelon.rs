//! Gauss-Jordan elimination over the rationals: ranks, kernels, inverses and
//! left solves.

use num_rational::BigRational;
use num_traits::{One, Zero};

use super::matrix::RationalMatrix;
use crate::error::{Error, Result};

/// Reduced row echelon form of a matrix.
#[derive(Clone, Debug)]
pub struct Echelon {
    /// The reduced matrix; rows past `pivots.len()` are zero.
    pub reduced: RationalMatrix,
    /// Pivot column of each nonzero row.
    pub pivots: Vec<usize>,
    /// Invertible `E` with `E * input = reduced`, when requested.
    pub transform: Option<RationalMatrix>,
}

impl Echelon {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }
}

fn eliminate(a: &mut RationalMatrix, mut t: Option<&mut RationalMatrix>) -> Vec<usize> {
    let (rows, cols) = (a.rows(), a.cols());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[(i, c)].is_zero()) else {
            continue;
        };
        a.swap_rows(r, p);
        if let Some(t) = t.as_deref_mut() {
            t.swap_rows(r, p);
        }
        let inv = a[(r, c)].recip();
        if !inv.is_one() {
            for x in a.row_mut(r) {
                if !x.is_zero() {
                    *x *= &inv;
                }
            }
            if let Some(t) = t.as_deref_mut() {
                for x in t.row_mut(r) {
                    if !x.is_zero() {
                        *x *= &inv;
                    }
                }
            }
        }
        for i in 0..rows {
            if i == r || a[(i, c)].is_zero() {
                continue;
            }
            let f = -a[(i, c)].clone();
            a.row_axpy(i, &f, r);
            if let Some(t) = t.as_deref_mut() {
                t.row_axpy(i, &f, r);
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rref(a: &RationalMatrix) -> Echelon {
    let mut reduced = a.clone();
    let pivots = eliminate(&mut reduced, None);
    Echelon {
        reduced,
        pivots,
        transform: None,
    }
}

pub fn rref_with_transform(a: &RationalMatrix) -> Echelon {
    let mut reduced = a.clone();
    let mut t = RationalMatrix::identity(a.rows());
    let pivots = eliminate(&mut reduced, Some(&mut t));
    Echelon {
        reduced,
        pivots,
        transform: Some(t),
    }
}

pub fn rank(a: &RationalMatrix) -> usize {
    rref(a).rank()
}

/// Basis (as rows) of `{x : a * x = 0}`.
pub fn right_kernel(a: &RationalMatrix) -> RationalMatrix {
    let e = rref(a);
    let n = a.cols();
    let mut is_pivot = vec![false; n];
    for &p in &e.pivots {
        is_pivot[p] = true;
    }
    let mut out = RationalMatrix::zeros(0, n);
    for f in (0..n).filter(|&j| !is_pivot[j]) {
        let mut v = vec![BigRational::zero(); n];
        v[f] = BigRational::one();
        for (i, &p) in e.pivots.iter().enumerate() {
            v[p] = -e.reduced[(i, f)].clone();
        }
        out.push_row(v).expect("row length matches");
    }
    out
}

/// Basis (as rows) of `{v : v * a = 0}`. The row count is
/// `rows(a) - rank(a)`.
pub fn left_kernel(a: &RationalMatrix) -> RationalMatrix {
    right_kernel(&a.transpose())
}

/// Rows of the reduced echelon form with zero rows dropped: a canonical
/// basis of the row space.
pub fn row_space_basis(a: &RationalMatrix) -> RationalMatrix {
    let e = rref(a);
    let idx: Vec<usize> = (0..e.rank()).collect();
    e.reduced.select_rows(&idx)
}

pub fn inverse(a: &RationalMatrix) -> Result<RationalMatrix> {
    if !a.is_square() {
        return Err(Error::Shape(format!(
            "cannot invert a {}x{} matrix",
            a.rows(),
            a.cols()
        )));
    }
    let e = rref_with_transform(a);
    if e.rank() < a.rows() {
        return Err(Error::Singular);
    }
    Ok(e.transform.expect("transform requested"))
}

/// Solves `x * a = b` for row vectors. The answer is the pivot solution
/// of the reduced echelon form; `None` when `b` is outside the row space.
pub fn solve_left(a: &RationalMatrix, b: &[BigRational]) -> Option<Vec<BigRational>> {
    RowSpaceSolver::new(a).solve(b)
}

/// Precomputed elimination for repeated left solves against the same matrix.
#[derive(Clone, Debug)]
pub struct RowSpaceSolver {
    reduced: RationalMatrix,
    pivots: Vec<usize>,
    transform: RationalMatrix,
}

impl RowSpaceSolver {
    pub fn new(a: &RationalMatrix) -> Self {
        let e = rref_with_transform(a);
        let idx: Vec<usize> = (0..e.rank()).collect();
        Self {
            reduced: e.reduced.select_rows(&idx),
            transform: e.transform.expect("transform requested").select_rows(&idx),
            pivots: e.pivots,
        }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Coordinates of `b` against the reduced basis, if `b` is in the row space.
    fn reduced_coords(&self, b: &[BigRational]) -> Option<Vec<BigRational>> {
        assert_eq!(b.len(), self.reduced.cols());
        let c: Vec<BigRational> = self.pivots.iter().map(|&p| b[p].clone()).collect();
        let recon = RationalMatrix::vec_mul(&c, &self.reduced);
        if recon.as_slice() != b {
            return None;
        }
        Some(c)
    }

    pub fn contains(&self, b: &[BigRational]) -> bool {
        self.reduced_coords(b).is_some()
    }

    pub fn solve(&self, b: &[BigRational]) -> Option<Vec<BigRational>> {
        let c = self.reduced_coords(b)?;
        Some(RationalMatrix::vec_mul(&c, &self.transform))
    }
}

/// Row basis kept in reduced echelon form, grown one vector at a time.
#[derive(Clone, Debug)]
pub struct IncrementalBasis {
    width: usize,
    rows: Vec<Vec<BigRational>>,
    pivots: Vec<usize>,
}

impl IncrementalBasis {
    pub fn new(width: usize) -> Self {
        Self {
            width,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn rows(&self) -> &[Vec<BigRational>] {
        &self.rows
    }

    fn reduce(&self, v: &[BigRational]) -> Vec<BigRational> {
        let mut v = v.to_vec();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if v[p].is_zero() {
                continue;
            }
            let f = v[p].clone();
            for (x, r) in v.iter_mut().zip(row) {
                if !r.is_zero() {
                    *x -= &f * r;
                }
            }
        }
        v
    }

    pub fn contains(&self, v: &[BigRational]) -> bool {
        self.reduce(v).iter().all(|x| x.is_zero())
    }

    /// Adds `v` if it is independent of the current rows; returns whether it was added.
    pub fn insert(&mut self, v: &[BigRational]) -> bool {
        assert_eq!(v.len(), self.width);
        let mut r = self.reduce(v);
        let Some(p) = r.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = r[p].recip();
        for x in r.iter_mut() {
            if !x.is_zero() {
                *x *= &inv;
            }
        }
        for row in self.rows.iter_mut() {
            if row[p].is_zero() {
                continue;
            }
            let f = row[p].clone();
            for (x, y) in row.iter_mut().zip(&r) {
                if !y.is_zero() {
                    *x -= &f * y;
                }
            }
        }
        self.rows.push(r);
        self.pivots.push(p);
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::matrix::rat;

    #[test]
    fn left_kernel_examples() {
        let k = left_kernel(&RationalMatrix::identity(2));
        assert_eq!(k.rows(), 0);

        let a = RationalMatrix::from_i64(2, 1, &[1, 2]);
        let k = left_kernel(&a);
        assert_eq!(k.rows(), 1);
        let v = k.row(0);
        assert_eq!(v[0], -&v[1] * rat(2, 1));
        assert!(RationalMatrix::vec_mul(v, &a).iter().all(|x| x.is_zero()));

        let k = left_kernel(&RationalMatrix::zeros(2, 2));
        assert_eq!(k.rows(), 2);
        assert_eq!(rank(&k), 2);
    }

    #[test]
    fn solve_left_examples() {
        let b = vec![rat(3, 1), rat(-1, 2), rat(7, 5)];
        assert_eq!(
            solve_left(&RationalMatrix::identity(3), &b),
            Some(b.clone())
        );

        let a = RationalMatrix::from_i64(2, 2, &[2, 0, 0, 0]);
        assert_eq!(
            solve_left(&a, &[rat(1, 1), rat(0, 1)]),
            Some(vec![rat(1, 2), rat(0, 1)])
        );

        let a = RationalMatrix::from_i64(1, 2, &[1, 0]);
        assert_eq!(solve_left(&a, &[rat(0, 1), rat(1, 1)]), None);
    }

    #[test]
    fn inverse_roundtrip() {
        let a = RationalMatrix::from_i64(3, 3, &[2, 1, 0, 0, 1, 4, 1, 0, 3]);
        let inv = inverse(&a).unwrap();
        assert!(a.mul(&inv).is_identity());
        assert_eq!(
            inverse(&RationalMatrix::from_i64(2, 2, &[1, 2, 2, 4])),
            Err(Error::Singular)
        );
    }
}
