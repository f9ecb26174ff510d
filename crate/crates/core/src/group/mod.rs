//! The recursive generator computation.
//!
//! A level works on `(V, Z^m, g, flag)`. It builds the derived layer,
//! recurses on the derived algebra acting on `V*`, lifts the returned
//! generators `q_i` to `g_{q_i} = exp(x_i)` with `dpi(x_i) = log q_i`, finds
//! the exponent vectors `w` for which `prod q_i^{w_i}` lifts into the
//! arithmetic group, corrects those lifts by elements of the kernel group and
//! appends `exp` of a basis of `n_L`.

mod member;
mod verify;

pub use member::member;
pub use verify::{
    structural_check, verify, verify_generators, StructuralReport, VerificationReport,
};

use num_traits::{One, Zero};

use crate::derived::{
    build_derived, n_lattice_basis, preimage_dpi, DerivedData, ErrorMapContext, NLattice,
};
use crate::error::{Error, Result};
use crate::lattice::{integral_relations, Lattice};
use crate::linalg::{hnf, inverse, BigInt, BigRational, HermiteBasis, RationalMatrix};
use crate::nilpotent::{exp_nilpotent, log_unipotent, require_valid, Flag, LieAlgebraRep};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Options {
    /// Restrict the error map to positions reachable by the enveloping
    /// algebra of `g`.
    pub support_optimization: bool,
}

impl Default for Options {
    fn default() -> Self {
        Self {
            support_optimization: true,
        }
    }
}

/// Integral exponent vectors `w` with `sum_i w_i psi(u_i)` integral, as rows
/// of a Hermite basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelationLattice {
    pub basis: HermiteBasis,
}

impl RelationLattice {
    pub fn rank(&self) -> usize {
        self.basis.rank()
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        self.basis.h.row(i)
    }

    pub fn pivot(&self, i: usize) -> usize {
        self.basis.pivots[i]
    }

    pub fn lead(&self, i: usize) -> &BigInt {
        &self.basis.h[(i, self.basis.pivots[i])]
    }
}

/// Relation lattice of the flattened error values `u_i` modulo the induced
/// lattice plus the error image of the kernel.
pub fn kernel_relation_lattice(u: &[Vec<BigRational>], n_lattice: &NLattice) -> RelationLattice {
    let rows: Vec<Vec<BigRational>> = u.iter().map(|x| n_lattice.psi(x)).collect();
    // columns integral in every row impose no condition
    let width = n_lattice.width - n_lattice.len();
    let keep: Vec<usize> = (0..width)
        .filter(|&j| rows.iter().any(|r| !r[j].is_integer()))
        .collect();
    let psi = RationalMatrix::from_rows(
        rows.iter()
            .map(|r| keep.iter().map(|&j| r[j].clone()).collect())
            .collect(),
        keep.len(),
    )
    .expect("psi rows have equal length");
    RelationLattice {
        basis: hnf(&integral_relations(&psi)),
    }
}

/// One recursion level. Matrices in `generators` are in the coordinates the
/// level was called with, where the lattice is the standard one.
#[derive(Clone, Debug)]
pub struct Level {
    pub dim: usize,
    pub generators: Vec<RationalMatrix>,
    pub layer: Option<Box<Layer>>,
}

/// Data of a non-trivial level. Matrices on `V` are in adapted coordinates.
#[derive(Clone, Debug)]
pub struct Layer {
    pub ctx: ErrorMapContext,
    pub data: DerivedData,
    pub n_lattice: NLattice,
    pub sub: Level,
    /// `x_i` with `dpi(x_i) = log q_i`.
    pub lifts: Vec<RationalMatrix>,
    /// Flattened `eps(exp x_i)`.
    pub lift_errors: Vec<Vec<BigRational>>,
    pub relations: RelationLattice,
    /// `g_1..g_k` followed by `n_1..n_l`.
    pub adapted_generators: Vec<RationalMatrix>,
}

impl Layer {
    /// Number of generators coming from the derived level.
    pub fn k(&self) -> usize {
        self.relations.rank()
    }

    /// Number of kernel generators.
    pub fn l(&self) -> usize {
        self.n_lattice.len()
    }
}

impl Level {
    fn empty(dim: usize) -> Self {
        Self {
            dim,
            generators: Vec::new(),
            layer: None,
        }
    }

    /// `(k, l)` for this level, `(0, 0)` for the base case.
    pub fn counts(&self) -> (usize, usize) {
        self.layer.as_ref().map_or((0, 0), |l| (l.k(), l.l()))
    }

    /// This level followed by all derived levels.
    pub fn chain(&self) -> Vec<&Level> {
        let mut out = vec![self];
        let mut cur = self;
        while let Some(layer) = &cur.layer {
            out.push(&layer.sub);
            cur = &layer.sub;
        }
        out
    }
}

/// Output of [`compute_generators`].
#[derive(Clone, Debug)]
pub struct TSequenceResult {
    /// `g_1..g_k, n_1..n_l` of the top level, in input coordinates.
    pub generators: Vec<RationalMatrix>,
    pub lattice: Lattice,
    pub lie_algebra: LieAlgebraRep,
    pub flag: Flag,
    /// Top level, in lattice coordinates.
    pub root: Level,
    to_input: RationalMatrix,
    from_input: RationalMatrix,
}

impl TSequenceResult {
    pub fn hirsch_length(&self) -> usize {
        self.generators.len()
    }

    /// Number of trailing generators forming the kernel layer.
    pub fn central_count(&self) -> usize {
        self.root.counts().1
    }

    /// `(k, l)` for each level, top first.
    pub fn level_summary(&self) -> Vec<(usize, usize)> {
        self.root.chain().iter().map(|l| l.counts()).collect()
    }

    /// Lattice coordinates to input coordinates.
    pub fn to_input(&self, x: &RationalMatrix) -> RationalMatrix {
        self.to_input.mul(x).mul(&self.from_input)
    }

    /// Input coordinates to lattice coordinates.
    pub fn from_input(&self, x: &RationalMatrix) -> RationalMatrix {
        self.from_input.mul(x).mul(&self.to_input)
    }
}

/// T-sequence of `G_L` with default options.
pub fn compute_generators(
    lattice: &Lattice,
    g: &LieAlgebraRep,
    flag: &Flag,
) -> Result<TSequenceResult> {
    compute_generators_with(lattice, g, flag, &Options::default())
}

pub fn compute_generators_with(
    lattice: &Lattice,
    g: &LieAlgebraRep,
    flag: &Flag,
    options: &Options,
) -> Result<TSequenceResult> {
    let m = g.dim_v();
    if lattice.dim() != m || flag.dim() != m {
        return Err(Error::Shape(format!(
            "lattice ({}), Lie algebra ({m}) and flag ({}) dimensions differ",
            lattice.dim(),
            flag.dim()
        )));
    }
    require_valid(g)?;
    flag.check_stable(g)?;

    let to_input = lattice.basis().transpose();
    let from_input = inverse(&to_input)?;
    let g0 = g.conjugate(&to_input, &from_input);
    let flag0 = flag.transform(&from_input);
    let root = build_level(&g0, &flag0, options)?;
    let generators = root
        .generators
        .iter()
        .map(|x| to_input.mul(x).mul(&from_input))
        .collect();
    Ok(TSequenceResult {
        generators,
        lattice: lattice.clone(),
        lie_algebra: g.clone(),
        flag: flag.clone(),
        root,
        to_input,
        from_input,
    })
}

fn build_level(g: &LieAlgebraRep, flag: &Flag, options: &Options) -> Result<Level> {
    let m = g.dim_v();
    if g.is_empty() {
        return Ok(Level::empty(m));
    }
    if flag.len() < 2 {
        return Err(Error::InvalidFlag(
            "a nonzero algebra needs a flag of length at least 2".into(),
        ));
    }
    let (data, ctx) = build_derived(&Lattice::standard(m), g, flag, options.support_optimization)?;
    let n_lattice = n_lattice_basis(&data, &ctx)?;
    let sub = build_level(&data.q_basis, &data.derived_flag, options)?;

    let mut lifts = Vec::with_capacity(sub.generators.len());
    let mut lift_errors = Vec::with_capacity(sub.generators.len());
    for q in &sub.generators {
        let x = preimage_dpi(&data, &log_unipotent(q)?)?;
        lift_errors.push(ctx.flat_error_adapted(&exp_nilpotent(&x)?));
        lifts.push(x);
    }
    let relations = kernel_relation_lattice(&lift_errors, &n_lattice);

    let mut adapted_generators = Vec::with_capacity(g.len());
    for i in 0..relations.rank() {
        adapted_generators.push(correction_step(relations.row(i), &lifts, &ctx, &n_lattice)?);
    }
    let identity = RationalMatrix::identity(m);
    for x in &n_lattice.generators {
        adapted_generators.push(identity.add(x));
    }
    if adapted_generators.len() != g.len() {
        return Err(Error::Internal(format!(
            "level produced {} generators for a {}-dimensional algebra",
            adapted_generators.len(),
            g.len()
        )));
    }
    let generators = adapted_generators
        .iter()
        .map(|x| ctx.from_adapted_coords(x))
        .collect();
    Ok(Level {
        dim: m,
        generators,
        layer: Some(Box::new(Layer {
            ctx,
            data,
            n_lattice,
            sub,
            lifts,
            lift_errors,
            relations,
            adapted_generators,
        })),
    })
}

/// `g_w = prod_j exp(w_j x_j)`, corrected by an element of the kernel group
/// so that its error value is integral. Adapted coordinates.
pub fn correction_step(
    w: &[BigInt],
    lifts: &[RationalMatrix],
    ctx: &ErrorMapContext,
    n_lattice: &NLattice,
) -> Result<RationalMatrix> {
    let mut gw = RationalMatrix::identity(ctx.dim);
    for (wj, x) in w.iter().zip(lifts) {
        if wj.is_zero() {
            continue;
        }
        gw = gw.mul(&exp_nilpotent(
            &x.scale(&BigRational::from_integer(wj.clone())),
        )?);
    }
    let u = ctx.flat_error_adapted(&gw);
    let (v, _) = n_lattice
        .split(&u)
        .ok_or_else(|| Error::Internal("error value outside Gamma + eps(n)".into()))?;
    let mut nw = RationalMatrix::identity(ctx.dim);
    for (c, x) in v.iter().zip(&n_lattice.generators) {
        if !c.is_zero() {
            nw.add_scaled(&-c, x);
        }
    }
    let gi = gw.mul(&nw);
    if !ctx.error_map_adapted(&gi).is_integral() {
        return Err(Error::Internal(
            "corrected generator has non-integral error".into(),
        ));
    }
    Ok(gi)
}

/// `prod_i gens_i^{e_i}` in order.
pub fn evaluate_word(
    gens: &[RationalMatrix],
    exponents: &[BigInt],
    dim: usize,
) -> Result<RationalMatrix> {
    let mut out = RationalMatrix::identity(dim);
    for (g, e) in gens.iter().zip(exponents) {
        if e.is_zero() {
            continue;
        }
        let p = if e.is_one() {
            g.clone()
        } else {
            crate::nilpotent::unipotent_pow(g, e)?
        };
        out = out.mul(&p);
    }
    Ok(out)
}
