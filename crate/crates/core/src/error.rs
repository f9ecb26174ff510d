use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("shape mismatch: {0}")]
    Shape(String),

    #[error("rows are linearly dependent")]
    DependentRows,

    #[error("matrix is singular")]
    Singular,

    #[error("matrix is not nilpotent")]
    NotNilpotent,

    #[error("matrix is not unipotent")]
    NotUnipotent,

    #[error("subspaces are not nested: {0}")]
    NotNested(String),

    #[error("the ambient vector space must be non-zero")]
    ZeroDimension,

    #[error("invalid Lie algebra: {0}")]
    InvalidLieAlgebra(String),

    #[error("invalid flag: {0}")]
    InvalidFlag(String),

    #[error("a derived layer needs a flag of length at least 2")]
    FlagTooShort,

    #[error("element lies outside the image of the derived projection")]
    NotInImage,

    #[error("internal inconsistency: {0}")]
    Internal(String),
}
