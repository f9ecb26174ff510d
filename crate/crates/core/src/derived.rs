//! One layer of the recursion.
//!
//! Given a flag `0 = V_0 < V_1 < ... < V_n = V` (with `n >= 2`) and a
//! lattice `L`, the layer works in coordinates of an adapted basis
//! `u_1..u_m` of `L`: `u_1..u_s` span `L ∩ V_1`, `u_1..u_t` span
//! `L ∩ V_{n-1}`. In these coordinates
//!
//! - the derived space `V* = V_{n-1} ⊕ V/V_1` has basis `u_1..u_t` followed by
//!   the images of `u_{s+1}..u_m`, and the derived lattice is `Z^(t+m-s)`;
//! - the derived action of a matrix is the pair of diagonal blocks on rows and
//!   columns `0..t` and `s..m`;
//! - the error map `phi -> pi ∘ phi|W_{n-1}` is the `s x (m-t)` block in rows
//!   `0..s` and columns `t..m`, and the induced lattice is the integral
//!   matrices in that block.

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::lattice::{intersect_with_inverse, l_complements, AdaptedBasis, Lattice};
use crate::linalg::{
    inverse, row_space_basis, rref_with_transform, BigRational, IncrementalBasis, RationalMatrix,
    RowSpaceSolver,
};
use crate::nilpotent::{Flag, LieAlgebraRep};

/// Coordinates needed to evaluate the error map.
#[derive(Clone, Debug)]
pub struct ErrorMapContext {
    pub dim: usize,
    pub s: usize,
    pub t: usize,
    /// Adapted basis as columns: adapted coordinates to input coordinates.
    pub from_adapted: RationalMatrix,
    /// Inverse of `from_adapted`.
    pub to_adapted: RationalMatrix,
    /// Positions `(row, col)` of the `s x (dim - t)` block used when
    /// flattening error-map values, in row-major order.
    pub support: Vec<(usize, usize)>,
}

impl ErrorMapContext {
    /// Number of columns of an error-map value.
    pub fn width(&self) -> usize {
        self.dim - self.t
    }

    pub fn to_adapted_coords(&self, phi: &RationalMatrix) -> RationalMatrix {
        self.to_adapted.mul(phi).mul(&self.from_adapted)
    }

    pub fn from_adapted_coords(&self, phi: &RationalMatrix) -> RationalMatrix {
        self.from_adapted.mul(phi).mul(&self.to_adapted)
    }

    /// Error map of an endomorphism already in adapted coordinates.
    pub fn error_map_adapted(&self, phi: &RationalMatrix) -> RationalMatrix {
        phi.submatrix(0..self.s, self.t..self.dim)
    }

    /// Entries of an error-map value at the support positions.
    pub fn flatten(&self, eps: &RationalMatrix) -> Vec<BigRational> {
        self.support
            .iter()
            .map(|&(i, j)| eps[(i, j)].clone())
            .collect()
    }

    /// Inverse of [`flatten`](Self::flatten): zero off the support.
    pub fn unflatten(&self, v: &[BigRational]) -> RationalMatrix {
        assert_eq!(v.len(), self.support.len());
        let mut out = RationalMatrix::zeros(self.s, self.width());
        for (x, &(i, j)) in v.iter().zip(&self.support) {
            out[(i, j)] = x.clone();
        }
        out
    }

    /// Flattened error map of an endomorphism in adapted coordinates.
    pub fn flat_error_adapted(&self, phi: &RationalMatrix) -> Vec<BigRational> {
        self.support
            .iter()
            .map(|&(i, j)| phi[(i, self.t + j)].clone())
            .collect()
    }

    /// Whether every position of the block is in the support.
    pub fn is_full_support(&self) -> bool {
        self.support.len() == self.s * self.width()
    }
}

/// `pi ∘ phi|W_{n-1}` for `phi` in input coordinates, as an `s x (m-t)`
/// matrix in the bases of `L ∩ V_1` and `L ∩ W_{n-1}`.
pub fn error_map(phi: &RationalMatrix, ctx: &ErrorMapContext) -> RationalMatrix {
    ctx.error_map_adapted(&ctx.to_adapted_coords(phi))
}

/// Everything one layer needs besides the error-map coordinates. All
/// matrices on `V` are in adapted coordinates.
#[derive(Clone, Debug)]
pub struct DerivedData {
    pub adapted: AdaptedBasis,
    pub vstar_dim: usize,
    pub lstar: Lattice,
    pub derived_flag: Flag,
    /// `g` in adapted coordinates.
    pub g: LieAlgebraRep,
    /// `dpi` of each basis element of `g`.
    pub dpi_images: Vec<RationalMatrix>,
    dpi_solver: RowSpaceSolver,
    /// Kernel of `dpi`.
    pub n_basis: LieAlgebraRep,
    /// Image of `dpi`, acting on `V*`.
    pub q_basis: LieAlgebraRep,
    /// Error map of each element of `n_basis`.
    pub n_image_basis: Vec<RationalMatrix>,
}

impl DerivedData {
    pub fn s(&self) -> usize {
        self.adapted.s
    }

    pub fn t(&self) -> usize {
        self.adapted.t
    }

    /// Action on `V*` of a matrix in adapted coordinates. Works for Lie
    /// algebra elements and group elements alike.
    pub fn derived_action(&self, phi: &RationalMatrix) -> RationalMatrix {
        derived_blocks(phi, self.s(), self.t())
    }
}

fn derived_blocks(phi: &RationalMatrix, s: usize, t: usize) -> RationalMatrix {
    let m = phi.rows();
    RationalMatrix::block_diag(&phi.submatrix(0..t, 0..t), &phi.submatrix(s..m, s..m))
}

/// Builds the derived data for one layer. `support_optimization` restricts
/// error-map values to the positions where the associative algebra
/// generated by `g` can be nonzero.
pub fn build_derived(
    lattice: &Lattice,
    g: &LieAlgebraRep,
    flag: &Flag,
    support_optimization: bool,
) -> Result<(DerivedData, ErrorMapContext)> {
    let n = flag.len();
    if n < 2 {
        return Err(Error::FlagTooShort);
    }
    let m = flag.dim();
    if g.dim_v() != m || lattice.dim() != m {
        return Err(Error::Shape(format!(
            "lattice ({}), Lie algebra ({}) and flag ({m}) dimensions differ",
            lattice.dim(),
            g.dim_v()
        )));
    }

    let v1 = flag.subspace(1);
    let vn1 = flag.subspace(n - 1);
    let adapted = l_complements(lattice.basis(), &v1, &vn1)?;
    let (s, t) = (adapted.s, adapted.t);

    let from_adapted = adapted.basis.transpose();
    let to_adapted = inverse(&from_adapted)?;
    let ga = g.conjugate(&from_adapted, &to_adapted);
    let flag_a = flag.transform(&to_adapted);

    let vstar_dim = t + m - s;
    let dpi_images: Vec<RationalMatrix> =
        ga.basis().iter().map(|x| derived_blocks(x, s, t)).collect();
    let flat_dpi = RationalMatrix::from_rows(
        dpi_images.iter().map(|x| x.flatten()).collect(),
        vstar_dim * vstar_dim,
    )?;

    // kernel: rows of the elimination transform that reduce to zero
    let ech = rref_with_transform(&flat_dpi);
    let transform = ech.transform.as_ref().expect("transform requested");
    let mut n_flat = RationalMatrix::zeros(0, m * m);
    for i in ech.rank()..g.len() {
        n_flat.push_row(ga.combination(transform.row(i)).flatten())?;
    }
    let n_flat = row_space_basis(&n_flat);
    let n_basis = LieAlgebraRep::new(
        m,
        n_flat
            .row_iter()
            .map(|r| RationalMatrix::from_vec(m, m, r.to_vec()))
            .collect::<Result<_>>()?,
    )?;

    // image: the dpi of a maximal independent prefix-greedy subset
    let mut span = IncrementalBasis::new(vstar_dim * vstar_dim);
    let mut q = Vec::new();
    for x in &dpi_images {
        if span.insert(&x.flatten()) {
            q.push(x.clone());
        }
    }
    let q_basis = LieAlgebraRep::new(vstar_dim, q)?;
    debug_assert_eq!(q_basis.len() + n_basis.len(), g.len());

    let derived_flag = derived_chain(&flag_a, s, t)?;

    let support = if support_optimization {
        support_positions(&ga, s, t)
    } else {
        (0..s)
            .flat_map(|i| (0..m - t).map(move |j| (i, j)))
            .collect()
    };
    let ctx = ErrorMapContext {
        dim: m,
        s,
        t,
        from_adapted,
        to_adapted,
        support,
    };

    let n_image_basis: Vec<RationalMatrix> = n_basis
        .basis()
        .iter()
        .map(|y| ctx.error_map_adapted(y))
        .collect();

    let data = DerivedData {
        adapted,
        vstar_dim,
        lstar: Lattice::standard(vstar_dim),
        derived_flag,
        g: ga,
        dpi_solver: RowSpaceSolver::new(&flat_dpi),
        dpi_images,
        n_basis,
        q_basis,
        n_image_basis,
    };
    Ok((data, ctx))
}

/// `V*_i = V_i ⊕ V_{i+1}/V_1` for `1 <= i <= n-1`, in the coordinates of `V*`.
fn derived_chain(flag: &Flag, s: usize, t: usize) -> Result<Flag> {
    let n = flag.len();
    let m = flag.dim();
    let vstar = t + m - s;
    let mut subspaces = Vec::with_capacity(n - 1);
    for i in 1..n {
        let lower = flag.subspace(i);
        let upper = flag.subspace(i + 1);
        let mut rows = RationalMatrix::zeros(0, vstar);
        for r in lower.row_iter() {
            if r[t..].iter().any(|x| !x.is_zero()) {
                return Err(Error::Internal(format!("V_{i} is not inside V_(n-1)")));
            }
            let mut v = r[..t].to_vec();
            v.resize(vstar, BigRational::zero());
            rows.push_row(v)?;
        }
        let quotient = row_space_basis(&upper.submatrix(0..upper.rows(), s..m));
        for r in quotient.row_iter() {
            let mut v = vec![BigRational::zero(); t];
            v.extend_from_slice(r);
            rows.push_row(v)?;
        }
        subspaces.push(rows);
    }
    Flag::new(vstar, subspaces)
}

/// Positions of the error-map block (rows `0..s`, columns `t..m`, reported
/// relative to column `t`) where some element of the associative algebra
/// with one generated by `g` is nonzero. `g` must be in adapted coordinates.
pub fn support_positions(g: &LieAlgebraRep, s: usize, t: usize) -> Vec<(usize, usize)> {
    let m = g.dim_v();
    let mut out = Vec::new();
    for r in 0..s {
        // span of e_r^T A, closed under right multiplication by g
        let mut span = IncrementalBasis::new(m);
        let mut start = vec![BigRational::zero(); m];
        start[r] = BigRational::from_integer(1.into());
        let mut queue = vec![start];
        while let Some(v) = queue.pop() {
            if !span.insert(&v) {
                continue;
            }
            for x in g.basis() {
                let w = RationalMatrix::vec_mul(&v, x);
                if w.iter().any(|c| !c.is_zero()) {
                    queue.push(w);
                }
            }
        }
        for c in t..m {
            if span.rows().iter().any(|row| !row[c].is_zero()) {
                out.push((r, c - t));
            }
        }
    }
    out
}

/// Preimage under `dpi` of `y` (on `V*`), in adapted coordinates; the pivot
/// solution of the linear system.
pub fn preimage_dpi(data: &DerivedData, y: &RationalMatrix) -> Result<RationalMatrix> {
    let coeffs = data
        .dpi_solver
        .solve(&y.flatten())
        .ok_or(Error::NotInImage)?;
    Ok(data.g.combination(&coeffs))
}

/// Basis `x_1..x_l` of `n_L = { x in n : eps(x) integral }` together with a
/// basis of the induced lattice (flattened on the support) whose first `l`
/// vectors span its intersection with `eps(n)`.
///
/// Flat positions where every `eps(x)` vanishes are kept out of the normal
/// form computation: there the basis is the standard one. The full basis is
/// `gamma` on the `active` positions followed by unit vectors on the rest.
#[derive(Clone, Debug)]
pub struct NLattice {
    /// `x_1..x_l`, adapted coordinates.
    pub generators: Vec<RationalMatrix>,
    /// Length of flattened error values.
    pub width: usize,
    /// Sorted positions where some `eps(x)` is nonzero.
    pub active: Vec<usize>,
    /// Basis of the induced lattice restricted to `active`; integral and
    /// unimodular.
    pub gamma: RationalMatrix,
    /// Inverse of `gamma`.
    pub gamma_inv: RationalMatrix,
}

impl NLattice {
    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    fn inactive(&self) -> impl Iterator<Item = usize> + '_ {
        let mut next = self.active.iter().peekable();
        (0..self.width).filter(move |i| {
            if next.peek() == Some(&i) {
                next.next();
                false
            } else {
                true
            }
        })
    }

    /// Coordinates of a flattened error-map value in the lattice basis.
    pub fn gamma_coords(&self, u: &[BigRational]) -> Vec<BigRational> {
        assert_eq!(u.len(), self.width);
        let head: Vec<BigRational> = self.active.iter().map(|&i| u[i].clone()).collect();
        let mut c = RationalMatrix::vec_mul(&head, &self.gamma_inv);
        c.extend(self.inactive().map(|i| u[i].clone()));
        c
    }

    /// Coordinates beyond the `eps(n)` part; integral exactly when the
    /// value lies in `Gamma + eps(n)`.
    pub fn psi(&self, u: &[BigRational]) -> Vec<BigRational> {
        self.gamma_coords(u)[self.len()..].to_vec()
    }

    /// Splits a flattened value as `v + gamma` with `v in eps(n)` and
    /// `gamma` integral, returning the coefficients of `v` on
    /// `eps(x_1)..eps(x_l)` and `gamma` itself. `None` if the value is not in
    /// `Gamma + eps(n)`.
    pub fn split(&self, u: &[BigRational]) -> Option<(Vec<BigRational>, Vec<BigRational>)> {
        let c = self.gamma_coords(u);
        let l = self.len();
        if !c[l..].iter().all(|x| x.is_integer()) {
            return None;
        }
        let a = self.active.len();
        let mut tail = vec![BigRational::zero(); l];
        tail.extend_from_slice(&c[l..a]);
        let head = RationalMatrix::vec_mul(&tail, &self.gamma);
        let mut gamma = vec![BigRational::zero(); self.width];
        for (&i, x) in self.active.iter().zip(head) {
            gamma[i] = x;
        }
        for (i, x) in self.inactive().zip(&c[a..]) {
            gamma[i] = x.clone();
        }
        Some((c[..l].to_vec(), gamma))
    }
}

pub fn n_lattice_basis(data: &DerivedData, ctx: &ErrorMapContext) -> Result<NLattice> {
    let width = ctx.support.len();
    let flat: Vec<Vec<BigRational>> = data.n_image_basis.iter().map(|e| ctx.flatten(e)).collect();
    let active: Vec<usize> = (0..width)
        .filter(|&i| flat.iter().any(|r| !r[i].is_zero()))
        .collect();
    let images = RationalMatrix::from_rows(
        flat.iter()
            .map(|r| active.iter().map(|&i| r[i].clone()).collect())
            .collect(),
        active.len(),
    )?;
    let solver = RowSpaceSolver::new(&images);
    if solver.rank() != data.n_basis.len() {
        return Err(Error::Internal(
            "error map is not injective on the kernel of the derived action".into(),
        ));
    }
    let (gamma, gamma_inv) =
        intersect_with_inverse(&RationalMatrix::identity(active.len()), &images)?;
    let mut generators = Vec::with_capacity(data.n_basis.len());
    for i in 0..data.n_basis.len() {
        let coeffs = solver
            .solve(gamma.row(i))
            .ok_or_else(|| Error::Internal("lattice vector outside eps(n)".into()))?;
        generators.push(data.n_basis.combination(&coeffs));
    }
    Ok(NLattice {
        generators,
        width,
        active,
        gamma,
        gamma_inv,
    })
}
