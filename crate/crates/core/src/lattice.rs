//! Lattice algorithms built on the Smith normal form: saturation,
//! intersection of a lattice with a subspace, adapted bases for a pair of
//! nested subspaces, and lattices of integral relations.
//!
//! Bases are always stored as rows.

use num_traits::One;

use crate::error::{Error, Result};
use crate::linalg::{
    hnf, inverse, left_kernel, rank, snf, solve_left, BigRational, IntegerMatrix, RationalMatrix,
};

/// A full-dimensional lattice in `Q^n`, given by a square invertible basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Lattice {
    basis: RationalMatrix,
}

impl Lattice {
    pub fn new(basis: RationalMatrix) -> Result<Self> {
        if !basis.is_square() {
            return Err(Error::Shape(format!(
                "lattice basis must be square, got {}x{}",
                basis.rows(),
                basis.cols()
            )));
        }
        if rank(&basis) < basis.rows() {
            return Err(Error::Singular);
        }
        Ok(Self { basis })
    }

    /// The standard lattice `Z^n`.
    pub fn standard(n: usize) -> Self {
        Self {
            basis: RationalMatrix::identity(n),
        }
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn basis(&self) -> &RationalMatrix {
        &self.basis
    }

    pub fn is_standard(&self) -> bool {
        self.basis.is_identity()
    }

    /// Coordinates of `v` with respect to the basis.
    pub fn coordinates(&self, v: &[BigRational]) -> Vec<BigRational> {
        solve_left(&self.basis, v).expect("basis spans the ambient space")
    }

    pub fn contains(&self, v: &[BigRational]) -> bool {
        self.coordinates(v).iter().all(|x| x.is_integer())
    }

    /// Whether the endomorphism `g` (acting on column vectors) maps the
    /// lattice onto itself.
    pub fn is_preserved_by(&self, g: &RationalMatrix) -> bool {
        let Some(m) = self.matrix_in_basis(g).to_integer() else {
            return false;
        };
        m.is_unimodular()
    }

    /// The matrix of `g` in lattice coordinates, `T^-1 g T` with `T` the
    /// basis as columns.
    pub fn matrix_in_basis(&self, g: &RationalMatrix) -> RationalMatrix {
        let t = self.basis.transpose();
        let t_inv = inverse(&t).expect("basis is invertible");
        t_inv.mul(g).mul(&t)
    }
}

/// Rows of the result are a Z-basis of `Z^n ∩ span_Q(rows of a)`.
pub fn saturate(a: &IntegerMatrix) -> Result<IntegerMatrix> {
    let m = a.rows();
    if m == 0 {
        return Ok(a.clone());
    }
    let d = snf(a);
    if d.rank < m {
        return Err(Error::DependentRows);
    }
    // S' = [I_m | 0], so P^-1 S' Q^-1 is P^-1 times the top rows of Q^-1.
    let top = d.q_inv.submatrix(0..m, 0..a.cols());
    Ok(d.p_inv.mul(&top))
}

/// Returns a basis of the lattice spanned by `lattice` (square, invertible)
/// whose first `rows(subspace)` rows span the intersection of the lattice with
/// the row space of `subspace`. Rational lattice bases are handled by working
/// in lattice coordinates.
pub fn intersect_lattice_subspace(
    lattice: &RationalMatrix,
    subspace: &RationalMatrix,
) -> Result<RationalMatrix> {
    Ok(intersect_with_inverse(lattice, subspace)?.0)
}

/// [`intersect_lattice_subspace`] together with the inverse of the returned
/// basis.
pub fn intersect_with_inverse(
    lattice: &RationalMatrix,
    subspace: &RationalMatrix,
) -> Result<(RationalMatrix, RationalMatrix)> {
    if !lattice.is_square() || lattice.cols() != subspace.cols() {
        return Err(Error::Shape(format!(
            "lattice basis {}x{} and subspace basis {}x{} are incompatible",
            lattice.rows(),
            lattice.cols(),
            subspace.rows(),
            subspace.cols()
        )));
    }
    let standard = lattice.is_identity();
    let lat_inv = if standard {
        lattice.clone()
    } else {
        inverse(lattice)?
    };
    if rank(subspace) < subspace.rows() {
        return Err(Error::DependentRows);
    }
    let coords = if standard {
        subspace.clear_row_denominators()
    } else {
        subspace.mul(&lat_inv).clear_row_denominators()
    };
    let c = saturate(&coords)?;
    let d = snf(&c);
    if standard {
        Ok((d.q_inv.to_rational(), d.q.to_rational()))
    } else {
        Ok((
            d.q_inv.to_rational().mul(lattice),
            lat_inv.mul(&d.q.to_rational()),
        ))
    }
}

/// Lattice basis `u_1..u_n` adapted to a pair of nested subspaces
/// `V1 ⊆ Vn1`: the first `s` rows span `L ∩ V1`, the first `t` rows span
/// `L ∩ Vn1`. The trailing rows span complements `W1 ⊇ Wn1` with
/// `L = (L ∩ V1) + (L ∩ W1) = (L ∩ Vn1) + (L ∩ Wn1)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdaptedBasis {
    pub basis: RationalMatrix,
    pub s: usize,
    pub t: usize,
}

impl AdaptedBasis {
    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    /// Basis of `L ∩ V1`.
    pub fn v1_basis(&self) -> RationalMatrix {
        self.basis.submatrix(0..self.s, 0..self.dim())
    }

    /// Basis of `L ∩ Vn1`.
    pub fn vn1_basis(&self) -> RationalMatrix {
        self.basis.submatrix(0..self.t, 0..self.dim())
    }

    /// Basis of `L ∩ W1`.
    pub fn w1_basis(&self) -> RationalMatrix {
        self.basis.submatrix(self.s..self.dim(), 0..self.dim())
    }

    /// Basis of `L ∩ Wn1`.
    pub fn wn1_basis(&self) -> RationalMatrix {
        self.basis.submatrix(self.t..self.dim(), 0..self.dim())
    }
}

pub fn l_complements(
    lattice: &RationalMatrix,
    v1: &RationalMatrix,
    vn1: &RationalMatrix,
) -> Result<AdaptedBasis> {
    let n = lattice.cols();
    let (s, t) = (v1.rows(), vn1.rows());
    if v1.cols() != n || vn1.cols() != n {
        return Err(Error::Shape(
            "subspace bases live in the wrong space".into(),
        ));
    }
    if rank(v1) < s || rank(vn1) < t {
        return Err(Error::DependentRows);
    }
    if rank(&vn1.vstack(v1)?) != t {
        return Err(Error::NotNested(format!(
            "the {s}-dimensional subspace is not contained in the {t}-dimensional one"
        )));
    }

    let w = intersect_lattice_subspace(lattice, vn1)?;
    let w_top = w.submatrix(0..t, 0..n);
    let mut alpha = RationalMatrix::zeros(0, t);
    for i in 0..s {
        let coeffs = solve_left(&w_top, v1.row(i))
            .ok_or_else(|| Error::Internal("V1 basis vector outside Vn1".into()))?;
        alpha.push_row(coeffs)?;
    }
    let inner = intersect_lattice_subspace(&RationalMatrix::identity(t), &alpha)?;
    let head = inner.mul(&w_top);
    let basis = head.vstack(&w.submatrix(t..n, 0..n))?;
    Ok(AdaptedBasis { basis, s, t })
}

/// Z-basis, in Hermite normal form, of
/// `{ e in Z^m : sum_i e_i * a_i in Z^n }` where `a_i` are the rows of `a`.
pub fn integral_relations(a: &RationalMatrix) -> IntegerMatrix {
    let (m, n) = (a.rows(), a.cols());
    let stacked = a
        .vstack(&RationalMatrix::identity(n))
        .expect("column counts agree");
    let kernel = left_kernel(&stacked).clear_row_denominators();
    debug_assert_eq!(kernel.rows(), m);
    let sat = saturate(&kernel).expect("kernel basis is independent");
    let projected = sat.submatrix(0..m, 0..m);
    let h = hnf(&projected);
    debug_assert_eq!(h.rank(), m);
    h.h
}

/// Returns `true` when the rows of `a` span exactly `Z^n ∩ span_Q(a)`.
pub fn is_saturated(a: &IntegerMatrix) -> bool {
    snf(a).diagonal.iter().all(|d| d.is_one())
}
