//! Built-in worked example: `g = span{e13, e14, e23 + e34}` on `Q^4` with
//! the standard lattice.

use arithgroup::{LieAlgebraRep, RationalMatrix};

use crate::problem::{matrix_to_text, ProblemFile, ProblemOptions};

fn unit(i: usize, j: usize) -> RationalMatrix {
    RationalMatrix::unit(4, 4, i - 1, j - 1)
}

pub fn worked_example_algebra() -> LieAlgebraRep {
    LieAlgebraRep::new(4, vec![unit(1, 3), unit(1, 4), unit(2, 3).add(&unit(3, 4))])
        .expect("shapes are fixed")
}

pub fn worked_example() -> ProblemFile {
    ProblemFile {
        dimension: 4,
        lie_algebra: worked_example_algebra()
            .basis()
            .iter()
            .map(matrix_to_text)
            .collect(),
        lattice: None,
        flag: None,
        options: ProblemOptions {
            support_optimization: true,
            verify: true,
        },
    }
}
