//! Membership by sifting through the recorded levels.

use num_integer::Integer;
use num_traits::Zero;

use super::{evaluate_word, Level, TSequenceResult};
use crate::error::{Error, Result};
use crate::linalg::{BigInt, RationalMatrix};
use crate::nilpotent::{is_unipotent, log_unipotent, unipotent_pow};

/// Exponents `e` with `g = prod_i generators_i^{e_i}`, or `None` when `g` is
/// not in the group generated by the result.
pub fn member(result: &TSequenceResult, g: &RationalMatrix) -> Result<Option<Vec<BigInt>>> {
    let m = result.lattice.dim();
    if g.rows() != m || g.cols() != m {
        return Err(Error::Shape(format!(
            "expected a {m}x{m} matrix, got {}x{}",
            g.rows(),
            g.cols()
        )));
    }
    if !is_unipotent(g) {
        return Err(Error::NotUnipotent);
    }
    if !result.lattice.is_preserved_by(g) {
        return Ok(None);
    }
    if result.lie_algebra.coordinates(&log_unipotent(g)?).is_none() {
        return Ok(None);
    }
    let Some(exps) = sift(&result.root, &result.from_input(g))? else {
        return Ok(None);
    };
    if evaluate_word(&result.generators, &exps, m)? != *g {
        return Err(Error::Internal(
            "sifted word does not reproduce the element".into(),
        ));
    }
    Ok(Some(exps))
}

fn sift(level: &Level, g: &RationalMatrix) -> Result<Option<Vec<BigInt>>> {
    let Some(layer) = &level.layer else {
        return Ok(g.is_identity().then(Vec::new));
    };
    let mut cur = layer.ctx.to_adapted_coords(g);
    let mut exps = Vec::with_capacity(level.generators.len());
    let rel = &layer.relations;
    for j in 0..rel.rank() {
        let Some(f) = sift(&layer.sub, &layer.data.derived_action(&cur))? else {
            return Ok(None);
        };
        let p = rel.pivot(j);
        if f[..p].iter().any(|x| !x.is_zero()) {
            return Ok(None);
        }
        let (a, r) = f[p].div_rem(rel.lead(j));
        if !r.is_zero() {
            return Ok(None);
        }
        if !a.is_zero() {
            cur = unipotent_pow(&layer.adapted_generators[j], &-&a)?.mul(&cur);
        }
        exps.push(a);
    }
    if !layer.data.derived_action(&cur).is_identity() {
        return Ok(None);
    }

    let nl = &layer.n_lattice;
    let u = layer.ctx.flat_error_adapted(&cur);
    let c = nl.gamma_coords(&u);
    let l = nl.len();
    if c[l..].iter().any(|x| !x.is_zero()) || c[..l].iter().any(|x| !x.is_integer()) {
        return Ok(None);
    }
    let mut expected = RationalMatrix::identity(level.dim);
    for (cj, x) in c[..l].iter().zip(&nl.generators) {
        expected.add_scaled(cj, x);
    }
    if expected != cur {
        return Ok(None);
    }
    exps.extend(c[..l].iter().map(|x| x.to_integer()));
    Ok(Some(exps))
}
