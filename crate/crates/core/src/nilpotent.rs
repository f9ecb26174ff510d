//! Nilpotent Lie algebra representations, flags, and the exact
//! exponential/logarithm between nilpotent and unipotent matrices.
//!
//! Matrices act on column vectors; subspaces are given by row bases.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::linalg::{rank, right_kernel, RationalMatrix, RowSpaceSolver};

/// A Lie algebra `g ⊂ gl(V)` given by a basis of `dim x dim` matrices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LieAlgebraRep {
    dim: usize,
    basis: Vec<RationalMatrix>,
}

impl LieAlgebraRep {
    /// Checks shapes only; see [`check_rep`] for the algebraic conditions.
    pub fn new(dim: usize, basis: Vec<RationalMatrix>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::ZeroDimension);
        }
        for (i, x) in basis.iter().enumerate() {
            if x.rows() != dim || x.cols() != dim {
                return Err(Error::Shape(format!(
                    "basis element {i} is {}x{}, expected {dim}x{dim}",
                    x.rows(),
                    x.cols()
                )));
            }
        }
        Ok(Self { dim, basis })
    }

    pub fn zero(dim: usize) -> Self {
        Self {
            dim,
            basis: Vec::new(),
        }
    }

    /// Dimension of the space acted on.
    pub fn dim_v(&self) -> usize {
        self.dim
    }

    /// Dimension of the algebra (number of basis elements).
    pub fn len(&self) -> usize {
        self.basis.len()
    }

    pub fn is_empty(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn basis(&self) -> &[RationalMatrix] {
        &self.basis
    }

    /// Basis elements flattened row-major, one per row.
    pub fn flattened(&self) -> RationalMatrix {
        let rows = self.basis.iter().map(|x| x.flatten()).collect();
        RationalMatrix::from_rows(rows, self.dim * self.dim).expect("square basis")
    }

    pub fn combination(&self, coeffs: &[BigRational]) -> RationalMatrix {
        assert_eq!(coeffs.len(), self.basis.len());
        let mut out = RationalMatrix::zeros(self.dim, self.dim);
        for (c, x) in coeffs.iter().zip(&self.basis) {
            out.add_scaled(c, x);
        }
        out
    }

    /// Solver for coordinates of matrices in the span of the basis.
    pub fn coordinate_solver(&self) -> RowSpaceSolver {
        RowSpaceSolver::new(&self.flattened())
    }

    /// Coordinates of `x` with respect to the basis, if `x` lies in the span.
    pub fn coordinates(&self, x: &RationalMatrix) -> Option<Vec<BigRational>> {
        self.coordinate_solver().solve(&x.flatten())
    }

    /// Conjugates every basis element: `t_inv * x * t`.
    pub fn conjugate(&self, t: &RationalMatrix, t_inv: &RationalMatrix) -> Self {
        Self {
            dim: t.rows(),
            basis: self.basis.iter().map(|x| t_inv.mul(x).mul(t)).collect(),
        }
    }
}

/// Chain `0 = V_0 < V_1 < ... < V_n = V` with `g V_i ⊆ V_{i-1}`. Stores
/// row bases of `V_1..V_n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Flag {
    dim: usize,
    subspaces: Vec<RationalMatrix>,
}

impl Flag {
    /// Validates that the dimensions strictly increase, the subspaces are
    /// nested, and the last one is the whole space.
    pub fn new(dim: usize, subspaces: Vec<RationalMatrix>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::ZeroDimension);
        }
        let mut prev = RationalMatrix::zeros(0, dim);
        for (i, v) in subspaces.iter().enumerate() {
            if v.cols() != dim {
                return Err(Error::Shape(format!(
                    "flag subspace {} has vectors of length {}, expected {dim}",
                    i + 1,
                    v.cols()
                )));
            }
            if rank(v) != v.rows() {
                return Err(Error::InvalidFlag(format!(
                    "basis of V_{} is linearly dependent",
                    i + 1
                )));
            }
            if v.rows() <= prev.rows() {
                return Err(Error::InvalidFlag(format!(
                    "dimensions must strictly increase (V_{} has dimension {})",
                    i + 1,
                    v.rows()
                )));
            }
            if rank(&v.vstack(&prev)?) != v.rows() {
                return Err(Error::InvalidFlag(format!(
                    "V_{i} is not contained in V_{}",
                    i + 1
                )));
            }
            prev = v.clone();
        }
        if prev.rows() != dim {
            return Err(Error::InvalidFlag(
                "last subspace must be the whole space".into(),
            ));
        }
        Ok(Self { dim, subspaces })
    }

    /// Flag `0 < V` of length one.
    pub fn trivial(dim: usize) -> Self {
        Self {
            dim,
            subspaces: vec![RationalMatrix::identity(dim)],
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// The length `n`.
    pub fn len(&self) -> usize {
        self.subspaces.len()
    }

    pub fn is_empty(&self) -> bool {
        self.subspaces.is_empty()
    }

    /// Row basis of `V_i` for `0 <= i <= n`; `V_0` has no rows.
    pub fn subspace(&self, i: usize) -> RationalMatrix {
        if i == 0 {
            RationalMatrix::zeros(0, self.dim)
        } else {
            self.subspaces[i - 1].clone()
        }
    }

    pub fn dims(&self) -> Vec<usize> {
        self.subspaces.iter().map(|v| v.rows()).collect()
    }

    /// Applies the coordinate change `v -> t_inv v` to every subspace. For row
    /// bases this is right multiplication by `t_inv^T`.
    pub fn transform(&self, t_inv: &RationalMatrix) -> Self {
        let tt = t_inv.transpose();
        Self {
            dim: self.dim,
            subspaces: self.subspaces.iter().map(|v| v.mul(&tt)).collect(),
        }
    }

    /// Checks `x V_i ⊆ V_{i-1}` for every basis element and every `i`.
    pub fn is_stable_under(&self, rep: &LieAlgebraRep) -> bool {
        self.first_violation(rep).is_none()
    }

    fn first_violation(&self, rep: &LieAlgebraRep) -> Option<(usize, usize)> {
        for (xi, x) in rep.basis().iter().enumerate() {
            let xt = x.transpose();
            for i in 1..=self.len() {
                let image = self.subspace(i).mul(&xt);
                let lower = self.subspace(i - 1);
                let ok = if lower.rows() == 0 {
                    image.is_zero()
                } else {
                    rank(&lower.vstack(&image).expect("same width")) == lower.rows()
                };
                if !ok {
                    return Some((xi, i));
                }
            }
        }
        None
    }

    pub fn check_stable(&self, rep: &LieAlgebraRep) -> Result<()> {
        if rep.dim_v() != self.dim {
            return Err(Error::Shape(format!(
                "flag lives in dimension {}, Lie algebra in {}",
                self.dim,
                rep.dim_v()
            )));
        }
        match self.first_violation(rep) {
            None => Ok(()),
            Some((x, i)) => Err(Error::InvalidFlag(format!(
                "basis element {x} does not map V_{i} into V_{}",
                i - 1
            ))),
        }
    }
}

/// Greedy flag: `V_1` is the common kernel of the basis, and `V_{k+1}/V_k` is
/// the common kernel of the induced action on `V/V_k`.
pub fn compute_flag(rep: &LieAlgebraRep) -> Result<Flag> {
    let n = rep.dim_v();
    if n == 0 {
        return Err(Error::ZeroDimension);
    }
    let mut subspaces = Vec::new();
    let mut current = RationalMatrix::zeros(0, n);
    while current.rows() < n {
        // functionals vanishing on the current subspace
        let ann = right_kernel(&current);
        let mut conditions = RationalMatrix::zeros(0, n);
        for x in rep.basis() {
            let fx = ann.mul(x);
            conditions = conditions.vstack(&fx)?;
        }
        let next = right_kernel(&conditions);
        if next.rows() == current.rows() {
            return Err(Error::InvalidLieAlgebra(format!(
                "the flag stabilises at dimension {} < {n}; the algebra is not nilpotent",
                current.rows()
            )));
        }
        subspaces.push(next.clone());
        current = next;
    }
    Flag::new(n, subspaces)
}

fn truncated_series(
    y: &RationalMatrix,
    coeff: impl Fn(usize) -> BigRational,
    err: Error,
) -> Result<RationalMatrix> {
    if !y.is_square() {
        return Err(Error::Shape(format!(
            "{}x{} is not square",
            y.rows(),
            y.cols()
        )));
    }
    let n = y.rows();
    let mut out = RationalMatrix::zeros(n, n);
    let mut power = RationalMatrix::identity(n);
    for i in 1..=n {
        power = power.mul(y);
        if power.is_zero() {
            return Ok(out);
        }
        if i == n {
            break;
        }
        out.add_scaled(&coeff(i), &power);
    }
    if power.is_zero() {
        Ok(out)
    } else {
        Err(err)
    }
}

fn factorial(i: usize) -> BigInt {
    (1..=i).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

/// `exp(x) = sum_{i < n} x^i / i!` for nilpotent `x`.
pub fn exp_nilpotent(x: &RationalMatrix) -> Result<RationalMatrix> {
    let series = truncated_series(
        x,
        |i| BigRational::new(BigInt::one(), factorial(i)),
        Error::NotNilpotent,
    )?;
    Ok(series.add(&RationalMatrix::identity(x.rows())))
}

/// `log(u) = sum_{1 <= i < n} (-1)^(i-1) (u - 1)^i / i` for unipotent `u`.
pub fn log_unipotent(u: &RationalMatrix) -> Result<RationalMatrix> {
    if !u.is_square() {
        return Err(Error::Shape(format!(
            "{}x{} is not square",
            u.rows(),
            u.cols()
        )));
    }
    let y = u.sub(&RationalMatrix::identity(u.rows()));
    truncated_series(
        &y,
        |i| {
            let sign = if i % 2 == 1 { 1 } else { -1 };
            BigRational::new(BigInt::from(sign), BigInt::from(i))
        },
        Error::NotUnipotent,
    )
}

pub fn is_nilpotent(x: &RationalMatrix) -> bool {
    x.is_square() && x.pow(x.rows() as u32).is_zero()
}

pub fn is_unipotent(u: &RationalMatrix) -> bool {
    u.is_square() && is_nilpotent(&u.sub(&RationalMatrix::identity(u.rows())))
}

/// `u^e = exp(e log u)` for any integer `e`.
pub fn unipotent_pow(u: &RationalMatrix, e: &BigInt) -> Result<RationalMatrix> {
    if e.is_zero() {
        return Ok(RationalMatrix::identity(u.rows()));
    }
    if e.is_one() {
        return Ok(u.clone());
    }
    let l = log_unipotent(u)?;
    exp_nilpotent(&l.scale(&BigRational::from_integer(e.clone())))
}

/// Bracket `[x_i, x_j]` expressed in the basis, or `None` when it leaves the span.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StructureConstant {
    pub i: usize,
    pub j: usize,
    pub coefficients: Option<Vec<BigRational>>,
}

/// Result of [`check_rep`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RepDiagnostics {
    pub nilpotent: Vec<bool>,
    pub independent: bool,
    pub brackets: Vec<StructureConstant>,
}

impl RepDiagnostics {
    pub fn is_valid(&self) -> bool {
        self.independent
            && self.nilpotent.iter().all(|&b| b)
            && self.brackets.iter().all(|b| b.coefficients.is_some())
    }

    /// Human-readable reasons the representation is invalid.
    pub fn problems(&self) -> Vec<String> {
        let mut out = Vec::new();
        if !self.independent {
            out.push("basis is linearly dependent".to_string());
        }
        for (i, ok) in self.nilpotent.iter().enumerate() {
            if !ok {
                out.push(format!("basis element {i} is not nilpotent"));
            }
        }
        for b in &self.brackets {
            if b.coefficients.is_none() {
                out.push(format!("bracket [x{}, x{}] is not in the span", b.i, b.j));
            }
        }
        out
    }

    /// The bracket of basis elements `i < j`.
    pub fn bracket(&self, i: usize, j: usize) -> Option<&StructureConstant> {
        self.brackets.iter().find(|b| b.i == i && b.j == j)
    }
}

/// Checks nilpotency of each basis element, linear independence, and closure
/// under the bracket (recording structure constants).
pub fn check_rep(rep: &LieAlgebraRep) -> RepDiagnostics {
    let nilpotent = rep.basis().iter().map(is_nilpotent).collect();
    let solver = rep.coordinate_solver();
    let independent = solver.rank() == rep.len();
    let mut brackets = Vec::new();
    for i in 0..rep.len() {
        for j in i + 1..rep.len() {
            let b = rep.basis()[i].bracket(&rep.basis()[j]);
            brackets.push(StructureConstant {
                i,
                j,
                coefficients: if independent {
                    solver.solve(&b.flatten())
                } else {
                    solver.contains(&b.flatten()).then(Vec::new)
                },
            });
        }
    }
    RepDiagnostics {
        nilpotent,
        independent,
        brackets,
    }
}

/// Validated check used by the main algorithm.
pub fn require_valid(rep: &LieAlgebraRep) -> Result<()> {
    let d = check_rep(rep);
    if d.is_valid() {
        Ok(())
    } else {
        Err(Error::InvalidLieAlgebra(d.problems().join("; ")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::rat;

    fn e(n: usize, i: usize, j: usize) -> RationalMatrix {
        RationalMatrix::unit(n, n, i - 1, j - 1)
    }

    #[test]
    fn flag_of_zero_algebra() {
        let f = compute_flag(&LieAlgebraRep::zero(1)).unwrap();
        assert_eq!(f.dims(), vec![1]);
    }

    #[test]
    fn flag_of_worked_example() {
        let rep = LieAlgebraRep::new(4, vec![e(4, 1, 3), e(4, 1, 4), e(4, 2, 3).add(&e(4, 3, 4))])
            .unwrap();
        let f = compute_flag(&rep).unwrap();
        assert_eq!(f.dims(), vec![2, 3, 4]);
        assert!(f.is_stable_under(&rep));
    }

    #[test]
    fn flag_of_heisenberg() {
        let rep = LieAlgebraRep::new(3, vec![e(3, 1, 2), e(3, 1, 3), e(3, 2, 3)]).unwrap();
        let f = compute_flag(&rep).unwrap();
        assert_eq!(f.dims(), vec![1, 2, 3]);
        assert!(f.is_stable_under(&rep));
    }

    #[test]
    fn flag_rejects_non_nilpotent() {
        let rep = LieAlgebraRep::new(2, vec![e(2, 1, 2).add(&e(2, 2, 1))]).unwrap();
        assert!(matches!(
            compute_flag(&rep),
            Err(Error::InvalidLieAlgebra(_))
        ));
    }

    #[test]
    fn exp_examples() {
        assert!(exp_nilpotent(&RationalMatrix::zeros(3, 3))
            .unwrap()
            .is_identity());
        let n = exp_nilpotent(&e(4, 1, 4)).unwrap();
        assert_eq!(n, RationalMatrix::identity(4).add(&e(4, 1, 4)));

        let x = e(4, 2, 3).add(&e(4, 3, 4));
        let g2 = RationalMatrix::identity(4)
            .add(&x)
            .add(&e(4, 2, 4).scale(&rat(1, 2)));
        assert_eq!(exp_nilpotent(&x).unwrap(), g2);
        assert_eq!(log_unipotent(&g2).unwrap(), x);
    }

    #[test]
    fn log_examples() {
        assert!(log_unipotent(&RationalMatrix::identity(3))
            .unwrap()
            .is_zero());
        let g1 = RationalMatrix::identity(4).add(&e(4, 1, 3));
        assert_eq!(log_unipotent(&g1).unwrap(), e(4, 1, 3));
    }

    #[test]
    fn rejects_non_nilpotent() {
        let x = RationalMatrix::from_i64(2, 2, &[0, 1, 1, 0]);
        assert_eq!(exp_nilpotent(&x), Err(Error::NotNilpotent));
        let u = RationalMatrix::from_i64(2, 2, &[2, 0, 0, 1]);
        assert_eq!(log_unipotent(&u), Err(Error::NotUnipotent));
    }

    #[test]
    fn check_rep_examples() {
        let g3 = LieAlgebraRep::new(3, vec![e(3, 1, 2), e(3, 1, 3), e(3, 2, 3)]).unwrap();
        let d = check_rep(&g3);
        assert!(d.is_valid());
        // [e12, e23] = e13
        assert_eq!(
            d.bracket(0, 2).unwrap().coefficients,
            Some(vec![rat(0, 1), rat(1, 1), rat(0, 1)])
        );

        let bad = LieAlgebraRep::new(2, vec![e(2, 1, 2).add(&e(2, 2, 1))]).unwrap();
        let d = check_rep(&bad);
        assert!(!d.is_valid());
        assert_eq!(d.nilpotent, vec![false]);

        let open = LieAlgebraRep::new(3, vec![e(3, 1, 2), e(3, 2, 3)]).unwrap();
        let d = check_rep(&open);
        assert!(!d.is_valid());
        assert!(d.bracket(0, 1).unwrap().coefficients.is_none());
    }

    #[test]
    fn zero_dimension_rejected() {
        assert_eq!(LieAlgebraRep::new(0, vec![]), Err(Error::ZeroDimension));
    }

    #[test]
    fn negative_powers() {
        let g = RationalMatrix::identity(3)
            .add(&e(3, 1, 2))
            .add(&e(3, 2, 3));
        let inv = unipotent_pow(&g, &BigInt::from(-1)).unwrap();
        assert!(g.mul(&inv).is_identity());
        let cube = unipotent_pow(&g, &BigInt::from(3)).unwrap();
        assert_eq!(cube, g.mul(&g).mul(&g));
    }
}
