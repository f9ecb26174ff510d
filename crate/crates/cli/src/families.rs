//! The two test families of nilpotent matrix Lie algebras.
//!
//! `g_n` (on `Q^n`, `n >= 3`): `x_i = e_{1,i+1}` for `1 <= i <= n-1` and
//! `x_n = sum_{j=2}^{n-1} e_{j,j+1}`; dimension `n`.
//!
//! `h_n` (on `Q^n`, `n >= 4`): `y_1 = sum_{i=1}^{n-1} i e_{i,i+1}` and
//! `y_k = sum_{i=1}^{n-k} e_{i,i+k}` for `2 <= k <= n-1`; dimension `n - 1`.

use std::fmt;
use std::str::FromStr;

use arithgroup::{BigRational, LieAlgebraRep, RationalMatrix};

use crate::error::{CliError, Result};
use crate::problem::{matrix_to_text, ProblemFile, ProblemOptions};

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Family {
    Gn,
    Hn,
}

impl Family {
    pub fn min_n(self) -> usize {
        match self {
            Family::Gn => 3,
            Family::Hn => 4,
        }
    }

    /// Dimension of the algebra, which is also the expected Hirsch length.
    pub fn dimension(self, n: usize) -> usize {
        match self {
            Family::Gn => n,
            Family::Hn => n - 1,
        }
    }

    pub fn algebra(self, n: usize) -> Result<LieAlgebraRep> {
        if n < self.min_n() {
            return Err(CliError::Input(format!(
                "{self} needs n >= {}, got {n}",
                self.min_n()
            )));
        }
        let basis = match self {
            Family::Gn => gn_basis(n),
            Family::Hn => hn_basis(n),
        };
        Ok(LieAlgebraRep::new(n, basis)?)
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::Gn => "gn",
            Family::Hn => "hn",
        })
    }
}

impl FromStr for Family {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "gn" => Ok(Family::Gn),
            "hn" => Ok(Family::Hn),
            _ => Err(CliError::Parse(format!("unknown family {s:?}"))),
        }
    }
}

fn unit(n: usize, i: usize, j: usize) -> RationalMatrix {
    RationalMatrix::unit(n, n, i - 1, j - 1)
}

fn gn_basis(n: usize) -> Vec<RationalMatrix> {
    let mut basis: Vec<RationalMatrix> = (1..n).map(|i| unit(n, 1, i + 1)).collect();
    let mut xn = RationalMatrix::zeros(n, n);
    for j in 2..n {
        xn = xn.add(&unit(n, j, j + 1));
    }
    basis.push(xn);
    basis
}

fn hn_basis(n: usize) -> Vec<RationalMatrix> {
    let mut y1 = RationalMatrix::zeros(n, n);
    for i in 1..n {
        y1.add_scaled(&BigRational::from_integer(i.into()), &unit(n, i, i + 1));
    }
    let mut basis = vec![y1];
    for k in 2..n {
        let mut yk = RationalMatrix::zeros(n, n);
        for i in 1..=n - k {
            yk = yk.add(&unit(n, i, i + k));
        }
        basis.push(yk);
    }
    basis
}

/// Problem file for a family member on the standard lattice.
pub fn gen_family(family: Family, n: usize) -> Result<ProblemFile> {
    let g = family.algebra(n)?;
    Ok(ProblemFile {
        dimension: n,
        lie_algebra: g.basis().iter().map(matrix_to_text).collect(),
        lattice: None,
        flag: None,
        options: ProblemOptions::default(),
    })
}
