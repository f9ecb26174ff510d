//! Finite generating sets for arithmetic subgroups of unipotent groups.
//!
//! Given the Lie algebra `g` of a unipotent group `G <= GL(V)` as a basis of
//! nilpotent rational matrices and a full-dimensional lattice `L` in `V`,
//! [`compute_generators`] returns a T-sequence for
//! `G_L = { g in G(Q) : gL = L }`. All arithmetic is exact.
//!
//! The crate is layered bottom-up:
//!
//! - [`linalg`]: rational/integer matrices, Smith and Hermite normal forms.
//! - [`lattice`]: saturation, lattice/subspace intersection, adapted bases,
//!   integral relation lattices.
//! - [`nilpotent`]: Lie algebra representations, flags, `exp`/`log`.
//! - [`derived`]: one recursion layer (derived space, error map, `n_L`).
//! - [`group`]: the recursive generator computation, membership and
//!   verification.

pub mod derived;
pub mod error;
pub mod group;
pub mod lattice;
pub mod linalg;
pub mod nilpotent;

pub use error::{Error, Result};
pub use group::{
    compute_generators, compute_generators_with, member, verify, Options, TSequenceResult,
};
pub use lattice::Lattice;
pub use linalg::{BigInt, BigRational, IntegerMatrix, RationalMatrix};
pub use nilpotent::{Flag, LieAlgebraRep};
