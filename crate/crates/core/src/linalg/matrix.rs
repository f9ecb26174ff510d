use std::fmt;
use std::ops::{Index, IndexMut, Range};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Dense row-major matrix.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

pub type RationalMatrix = Matrix<BigRational>;
pub type IntegerMatrix = Matrix<BigInt>;

impl<T: Clone> Matrix<T> {
    pub fn from_vec(rows: usize, cols: usize, data: Vec<T>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::Shape(format!(
                "{} entries do not fill a {rows}x{cols} matrix",
                data.len()
            )));
        }
        Ok(Self { rows, cols, data })
    }

    /// Builds a matrix from a list of rows. `cols` is needed to type the
    /// zero-row case.
    pub fn from_rows(rows: Vec<Vec<T>>, cols: usize) -> Result<Self> {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * cols);
        for (i, r) in rows.into_iter().enumerate() {
            if r.len() != cols {
                return Err(Error::Shape(format!(
                    "row {i} has {} entries, expected {cols}",
                    r.len()
                )));
            }
            data.extend(r);
        }
        Ok(Self {
            rows: n,
            cols,
            data,
        })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self { rows, cols, data }
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    #[inline]
    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    #[inline]
    pub fn row_mut(&mut self, i: usize) -> &mut [T] {
        &mut self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_iter(&self) -> impl Iterator<Item = &[T]> {
        (0..self.rows).map(move |i| self.row(i))
    }

    pub fn to_rows(&self) -> Vec<Vec<T>> {
        self.row_iter().map(|r| r.to_vec()).collect()
    }

    pub fn entries(&self) -> &[T] {
        &self.data
    }

    pub fn into_entries(self) -> Vec<T> {
        self.data
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn submatrix(&self, rows: Range<usize>, cols: Range<usize>) -> Self {
        let (r0, c0) = (rows.start, cols.start);
        Self::from_fn(rows.len(), cols.len(), |i, j| {
            self[(r0 + i, c0 + j)].clone()
        })
    }

    pub fn select_rows(&self, idx: &[usize]) -> Self {
        let mut data = Vec::with_capacity(idx.len() * self.cols);
        for &i in idx {
            data.extend_from_slice(self.row(i));
        }
        Self {
            rows: idx.len(),
            cols: self.cols,
            data,
        }
    }

    /// Stacks `other` below `self`.
    pub fn vstack(&self, other: &Self) -> Result<Self> {
        if self.cols != other.cols {
            return Err(Error::Shape(format!(
                "cannot stack {} columns on {} columns",
                other.cols, self.cols
            )));
        }
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Ok(Self {
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        })
    }

    pub fn map<U>(&self, f: impl FnMut(&T) -> U) -> Matrix<U> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn push_row(&mut self, row: Vec<T>) -> Result<()> {
        if row.len() != self.cols {
            return Err(Error::Shape(format!(
                "row has {} entries, expected {}",
                row.len(),
                self.cols
            )));
        }
        self.data.extend(row);
        self.rows += 1;
        Ok(())
    }
}

impl<T> Index<(usize, usize)> for Matrix<T> {
    type Output = T;

    #[inline]
    fn index(&self, (i, j): (usize, usize)) -> &T {
        debug_assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }
}

impl<T> IndexMut<(usize, usize)> for Matrix<T> {
    #[inline]
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut T {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.data[i * self.cols + j]
    }
}

impl<T: fmt::Display> fmt::Display for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "[")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.data[i * self.cols + j])?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

impl<T: fmt::Display> fmt::Debug for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Matrix{}x{}{}", self.rows, self.cols, self)
    }
}

macro_rules! impl_ring_ops {
    ($t:ty) => {
        impl Matrix<$t> {
            pub fn zeros(rows: usize, cols: usize) -> Self {
                Self {
                    rows,
                    cols,
                    data: vec![<$t>::zero(); rows * cols],
                }
            }

            pub fn identity(n: usize) -> Self {
                Self::from_fn(n, n, |i, j| if i == j { <$t>::one() } else { <$t>::zero() })
            }

            pub fn is_zero(&self) -> bool {
                self.data.iter().all(|x| x.is_zero())
            }

            pub fn is_identity(&self) -> bool {
                self.is_square()
                    && (0..self.rows).all(|i| {
                        (0..self.cols).all(|j| {
                            let x = &self[(i, j)];
                            if i == j {
                                x.is_one()
                            } else {
                                x.is_zero()
                            }
                        })
                    })
            }

            pub fn mul(&self, rhs: &Self) -> Self {
                assert_eq!(
                    self.cols, rhs.rows,
                    "cannot multiply {}x{} by {}x{}",
                    self.rows, self.cols, rhs.rows, rhs.cols
                );
                let mut out = Self::zeros(self.rows, rhs.cols);
                let n = rhs.cols;
                for i in 0..self.rows {
                    for k in 0..self.cols {
                        let a = &self.data[i * self.cols + k];
                        if a.is_zero() {
                            continue;
                        }
                        let brow = &rhs.data[k * n..(k + 1) * n];
                        let orow = &mut out.data[i * n..(i + 1) * n];
                        for (o, b) in orow.iter_mut().zip(brow) {
                            if !b.is_zero() {
                                *o += a * b;
                            }
                        }
                    }
                }
                out
            }

            pub fn add(&self, rhs: &Self) -> Self {
                assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
                Self {
                    rows: self.rows,
                    cols: self.cols,
                    data: self
                        .data
                        .iter()
                        .zip(&rhs.data)
                        .map(|(a, b)| a + b)
                        .collect(),
                }
            }

            pub fn sub(&self, rhs: &Self) -> Self {
                assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
                Self {
                    rows: self.rows,
                    cols: self.cols,
                    data: self
                        .data
                        .iter()
                        .zip(&rhs.data)
                        .map(|(a, b)| a - b)
                        .collect(),
                }
            }

            pub fn neg(&self) -> Self {
                self.map(|x| -x)
            }

            pub fn scale(&self, c: &$t) -> Self {
                if c.is_zero() {
                    return Self::zeros(self.rows, self.cols);
                }
                self.map(|x| if x.is_zero() { <$t>::zero() } else { x * c })
            }

            /// `self += c * other`
            pub fn add_scaled(&mut self, c: &$t, other: &Self) {
                assert_eq!((self.rows, self.cols), (other.rows, other.cols));
                if c.is_zero() {
                    return;
                }
                for (a, b) in self.data.iter_mut().zip(&other.data) {
                    if !b.is_zero() {
                        *a += c * b;
                    }
                }
            }

            /// `row[dst] += c * row[src]`
            pub fn row_axpy(&mut self, dst: usize, c: &$t, src: usize) {
                if c.is_zero() {
                    return;
                }
                let n = self.cols;
                for j in 0..n {
                    let s = &self.data[src * n + j];
                    if !s.is_zero() {
                        let d = c * s;
                        self.data[dst * n + j] += d;
                    }
                }
            }

            /// `col[dst] += c * col[src]`
            pub fn col_axpy(&mut self, dst: usize, c: &$t, src: usize) {
                if c.is_zero() {
                    return;
                }
                let n = self.cols;
                for i in 0..self.rows {
                    let s = &self.data[i * n + src];
                    if !s.is_zero() {
                        let d = c * s;
                        self.data[i * n + dst] += d;
                    }
                }
            }

            pub fn negate_row(&mut self, i: usize) {
                for x in self.row_mut(i) {
                    *x = -std::mem::replace(x, <$t>::zero());
                }
            }

            pub fn negate_col(&mut self, j: usize) {
                for i in 0..self.rows {
                    let x = &mut self[(i, j)];
                    *x = -std::mem::replace(x, <$t>::zero());
                }
            }

            /// Row vector times matrix.
            pub fn vec_mul(v: &[$t], m: &Self) -> Vec<$t> {
                assert_eq!(v.len(), m.rows);
                let mut out = vec![<$t>::zero(); m.cols];
                for (k, a) in v.iter().enumerate() {
                    if a.is_zero() {
                        continue;
                    }
                    for (o, b) in out.iter_mut().zip(m.row(k)) {
                        if !b.is_zero() {
                            *o += a * b;
                        }
                    }
                }
                out
            }

            /// Block diagonal matrix `diag(a, b)`.
            pub fn block_diag(a: &Self, b: &Self) -> Self {
                let rows = a.rows + b.rows;
                let cols = a.cols + b.cols;
                let mut out = Self::zeros(rows, cols);
                for i in 0..a.rows {
                    for j in 0..a.cols {
                        out[(i, j)] = a[(i, j)].clone();
                    }
                }
                for i in 0..b.rows {
                    for j in 0..b.cols {
                        out[(a.rows + i, a.cols + j)] = b[(i, j)].clone();
                    }
                }
                out
            }

            /// Commutator `[self, rhs] = self*rhs - rhs*self`.
            pub fn bracket(&self, rhs: &Self) -> Self {
                self.mul(rhs).sub(&rhs.mul(self))
            }

            /// `self^e` for `e >= 0`.
            pub fn pow(&self, e: u32) -> Self {
                assert!(self.is_square());
                let mut acc = Self::identity(self.rows);
                for _ in 0..e {
                    acc = acc.mul(self);
                }
                acc
            }
        }
    };
}

impl_ring_ops!(BigInt);
impl_ring_ops!(BigRational);

impl IntegerMatrix {
    pub fn from_i64(rows: usize, cols: usize, entries: &[i64]) -> Self {
        assert_eq!(entries.len(), rows * cols);
        Self {
            rows,
            cols,
            data: entries.iter().map(|&x| BigInt::from(x)).collect(),
        }
    }

    pub fn to_rational(&self) -> RationalMatrix {
        self.map(|x| BigRational::from_integer(x.clone()))
    }

    /// Determinant by fraction-free Bareiss elimination.
    pub fn det(&self) -> BigInt {
        assert!(self.is_square());
        let n = self.rows;
        if n == 0 {
            return BigInt::one();
        }
        let mut a = self.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if a[(k, k)].is_zero() {
                match (k + 1..n).find(|&i| !a[(i, k)].is_zero()) {
                    Some(p) => {
                        a.swap_rows(k, p);
                        sign = -sign;
                    }
                    None => return BigInt::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = (&a[(i, j)] * &a[(k, k)] - &a[(i, k)] * &a[(k, j)]) / &prev;
                    a[(i, j)] = v;
                }
            }
            prev = a[(k, k)].clone();
        }
        sign * a[(n - 1, n - 1)].clone()
    }

    pub fn is_unimodular(&self) -> bool {
        self.is_square() && self.det().abs().is_one()
    }
}

impl RationalMatrix {
    pub fn from_i64(rows: usize, cols: usize, entries: &[i64]) -> Self {
        assert_eq!(entries.len(), rows * cols);
        Self {
            rows,
            cols,
            data: entries
                .iter()
                .map(|&x| BigRational::from_integer(BigInt::from(x)))
                .collect(),
        }
    }

    pub fn is_integral(&self) -> bool {
        self.data.iter().all(|x| x.is_integer())
    }

    /// The matrix as integers, if every entry is integral.
    pub fn to_integer(&self) -> Option<IntegerMatrix> {
        if !self.is_integral() {
            return None;
        }
        Some(self.map(|x| x.to_integer()))
    }

    /// Multiplies every row by the lcm of its denominators.
    pub fn clear_row_denominators(&self) -> IntegerMatrix {
        let mut out = IntegerMatrix::zeros(self.rows, self.cols);
        for i in 0..self.rows {
            let l = self
                .row(i)
                .iter()
                .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
            for j in 0..self.cols {
                let x = &self[(i, j)];
                out[(i, j)] = x.numer() * (&l / x.denom());
            }
        }
        out
    }

    /// Elementary matrix unit `e_{ij}` (zero-based indices).
    pub fn unit(rows: usize, cols: usize, i: usize, j: usize) -> Self {
        let mut m = Self::zeros(rows, cols);
        m[(i, j)] = BigRational::one();
        m
    }

    /// Row-major flattening.
    pub fn flatten(&self) -> Vec<BigRational> {
        self.data.clone()
    }
}

/// Convenience constructor for rationals in tests and fixtures.
pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}
