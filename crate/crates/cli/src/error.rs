use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("cannot access {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("invalid input: {0}")]
    Input(String),

    #[error("invalid Lie algebra: {0}")]
    LieAlgebra(String),

    #[error("invalid flag: {0}")]
    Flag(String),

    #[error("internal error: {0}")]
    Internal(String),

    #[error("verification failed: {0}")]
    Verification(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            Self::Io { .. } | Self::Parse(_) | Self::Input(_) => 2,
            Self::LieAlgebra(_) | Self::Flag(_) => 3,
            Self::Internal(_) | Self::Verification(_) => 4,
        }
    }
}

impl From<arithgroup::Error> for CliError {
    fn from(e: arithgroup::Error) -> Self {
        use arithgroup::Error as E;
        match e {
            E::Shape(_)
            | E::DependentRows
            | E::Singular
            | E::NotNested(_)
            | E::ZeroDimension
            | E::NotUnipotent => Self::Input(e.to_string()),
            E::NotNilpotent => Self::LieAlgebra("a basis element is not nilpotent".into()),
            E::InvalidLieAlgebra(m) => Self::LieAlgebra(m),
            E::InvalidFlag(m) => Self::Flag(m),
            E::FlagTooShort => Self::Flag(e.to_string()),
            E::NotInImage | E::Internal(_) => Self::Internal(e.to_string()),
        }
    }
}

pub type Result<T> = std::result::Result<T, CliError>;
