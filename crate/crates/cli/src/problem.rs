//! Problem and result files. Rationals are written as strings (`"3"`,
//! `"-1/2"`) so that values survive a round trip exactly.

use std::str::FromStr;

use arithgroup::{BigRational, Flag, Lattice, LieAlgebraRep, RationalMatrix};
use serde::{Deserialize, Serialize};

use crate::error::{CliError, Result};

/// Rows of rational strings.
pub type MatrixText = Vec<Vec<String>>;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemOptions {
    #[serde(default = "default_true")]
    pub support_optimization: bool,
    #[serde(default)]
    pub verify: bool,
}

fn default_true() -> bool {
    true
}

impl Default for ProblemOptions {
    fn default() -> Self {
        Self {
            support_optimization: true,
            verify: false,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemFile {
    pub dimension: usize,
    pub lie_algebra: Vec<MatrixText>,
    /// Lattice basis as rows; the standard lattice when absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lattice: Option<MatrixText>,
    /// Row bases of `V_1 < ... < V_n`; computed when absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub flag: Option<Vec<MatrixText>>,
    #[serde(default)]
    pub options: ProblemOptions,
}

/// A parsed problem.
#[derive(Clone, Debug, PartialEq)]
pub struct Problem {
    pub lie_algebra: LieAlgebraRep,
    pub lattice: Lattice,
    pub flag: Option<Flag>,
    pub options: ProblemOptions,
}

pub fn parse_rational(s: &str) -> Result<BigRational> {
    BigRational::from_str(s.trim()).map_err(|e| CliError::Parse(format!("bad rational {s:?}: {e}")))
}

/// Parses a matrix with exactly `cols` columns and, when given, `rows` rows.
pub fn parse_matrix(
    text: &MatrixText,
    rows: Option<usize>,
    cols: usize,
    what: &str,
) -> Result<RationalMatrix> {
    if let Some(r) = rows {
        if text.len() != r {
            return Err(CliError::Input(format!(
                "{what} has {} rows, expected {r}",
                text.len()
            )));
        }
    }
    let mut out = Vec::with_capacity(text.len());
    for (i, row) in text.iter().enumerate() {
        if row.len() != cols {
            return Err(CliError::Input(format!(
                "{what}: row {i} has {} entries, expected {cols}",
                row.len()
            )));
        }
        out.push(
            row.iter()
                .map(|s| parse_rational(s))
                .collect::<Result<Vec<_>>>()?,
        );
    }
    Ok(RationalMatrix::from_rows(out, cols)?)
}

pub fn matrix_to_text(m: &RationalMatrix) -> MatrixText {
    m.row_iter()
        .map(|r| r.iter().map(|x| x.to_string()).collect())
        .collect()
}

impl ProblemFile {
    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| CliError::Parse(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("problem files serialize")
    }

    pub fn parse(&self) -> Result<Problem> {
        let n = self.dimension;
        if n == 0 {
            return Err(CliError::Input("dimension must be positive".into()));
        }
        let basis = self
            .lie_algebra
            .iter()
            .enumerate()
            .map(|(i, m)| parse_matrix(m, Some(n), n, &format!("Lie algebra element {i}")))
            .collect::<Result<Vec<_>>>()?;
        let lie_algebra = LieAlgebraRep::new(n, basis)?;
        let lattice = match &self.lattice {
            None => Lattice::standard(n),
            Some(m) => Lattice::new(parse_matrix(m, Some(n), n, "lattice")?)
                .map_err(|e| CliError::Input(format!("lattice basis: {e}")))?,
        };
        let flag = match &self.flag {
            None => None,
            Some(spaces) => {
                let subspaces = spaces
                    .iter()
                    .enumerate()
                    .map(|(i, m)| parse_matrix(m, None, n, &format!("flag subspace {}", i + 1)))
                    .collect::<Result<Vec<_>>>()?;
                Some(Flag::new(n, subspaces).map_err(|e| CliError::Flag(e.to_string()))?)
            }
        };
        Ok(Problem {
            lie_algebra,
            lattice,
            flag,
            options: self.options.clone(),
        })
    }
}

impl Problem {
    /// Canonical file form.
    pub fn to_file(&self) -> ProblemFile {
        let n = self.lie_algebra.dim_v();
        ProblemFile {
            dimension: n,
            lie_algebra: self
                .lie_algebra
                .basis()
                .iter()
                .map(matrix_to_text)
                .collect(),
            lattice: (!self.lattice.is_standard()).then(|| matrix_to_text(self.lattice.basis())),
            flag: self.flag.as_ref().map(|f| {
                (1..=f.len())
                    .map(|i| matrix_to_text(&f.subspace(i)))
                    .collect()
            }),
            options: self.options.clone(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LevelCounts {
    pub k: usize,
    pub l: usize,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct VerificationFile {
    pub passed: bool,
    pub preserves_lattice: bool,
    pub hirsch_length: bool,
    pub log_span: bool,
    pub central: bool,
    pub structural_checks: usize,
    pub failures: Vec<String>,
}

/// Wall-clock seconds per phase.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Timing {
    pub parse: f64,
    pub flag: f64,
    pub generators: f64,
    pub verify: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ResultFile {
    pub problem: ProblemFile,
    pub generators: Vec<MatrixText>,
    pub hirsch_length: usize,
    /// Trailing generators forming the kernel layer.
    pub central_count: usize,
    pub levels: Vec<LevelCounts>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub verification: Option<VerificationFile>,
    #[serde(default)]
    pub timing: Timing,
}

impl ResultFile {
    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| CliError::Parse(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("result files serialize")
    }

    pub fn parse_generators(&self) -> Result<Vec<RationalMatrix>> {
        let n = self.problem.dimension;
        self.generators
            .iter()
            .enumerate()
            .map(|(i, m)| parse_matrix(m, Some(n), n, &format!("generator {i}")))
            .collect()
    }
}
