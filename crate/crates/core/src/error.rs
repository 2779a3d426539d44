use crate::linalg::LinalgError;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax { line: usize, column: usize, message: String },
    #[error("unknown vertex `{name}` at line {line}, column {column}")]
    UnknownVertex { name: String, line: usize, column: usize },
    #[error("unknown arrow `{name}` at line {line}, column {column}")]
    UnknownArrow { name: String, line: usize, column: usize },
    #[error("invalid quiver: {0}")]
    InvalidQuiver(String),
    #[error("invalid path: {0}")]
    InvalidPath(String),
    #[error("invalid relation: {0}")]
    InvalidRelation(String),
    #[error("relation terms are not parallel: {0}")]
    NonParallel(String),
    #[error("ideal is not admissible: {0}")]
    NotAdmissible(String),
    #[error("path enumeration cap of {cap} exceeded: {detail}")]
    CapExceeded { cap: usize, detail: String },
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error("invalid representation: {0}")]
    InvalidRepresentation(String),
    #[error("modules belong to different algebras")]
    AlgebraMismatch,
    #[error("operation needs a nonzero module")]
    ZeroModule,
    #[error("operation needs a nonzero morphism")]
    ZeroMorphism,
    #[error("module is decomposable")]
    Decomposable,
    #[error("endomorphism ring does not split over the rationals: {0}")]
    SplitFieldNeeded(String),
    #[error("enumeration limits exceeded: {0}")]
    LimitsExceeded(String),
    #[error("module is not isomorphic to any node: {0}")]
    UnknownModule(String),
    #[error("method inapplicable: {0}")]
    MethodInapplicable(String),
    #[error("internal inconsistency: {0}")]
    Inconsistency(String),
    #[error("{0}")]
    Serialization(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
