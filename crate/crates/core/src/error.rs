use thiserror::Error;

/// Errors raised across the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("root is isotropic: reflection undefined")]
    IsotropicRoot,
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("gram matrix is not symmetric")]
    NotSymmetric,
    #[error("invalid ambient split: {0}")]
    InvalidSplit(String),
    #[error("invalid rank {rank} for type {kind}")]
    InvalidRank { kind: String, rank: usize },
    #[error("unknown root system type `{0}`")]
    UnknownType(String),
    #[error("root system is not irreducible")]
    NotIrreducible,
    #[error("rank mismatch: {0} vs {1}")]
    RankMismatch(usize, usize),
    #[error("invalid semilattice: {0}")]
    InvalidSemilattice(String),
    #[error("constraint violated: {0}")]
    ConstraintViolation(String),
    #[error("wrong arity: {0}")]
    WrongArity(String),
    #[error("descriptor is not of type BC")]
    NotBcType,
    #[error("vector does not reduce into the finite root system")]
    NotOverFinitePart,
    #[error("not a Weyl group orbit of anisotropic roots")]
    NotAnOrbit,
    #[error("not a root: {0}")]
    UnknownRoot(String),
    #[error("word does not evaluate to the identity")]
    NotARelation,
    #[error("extraction stuck: {0}")]
    Stuck(String),
    #[error("group enumeration exceeded budget of {0} elements")]
    GroupTooLarge(usize),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
