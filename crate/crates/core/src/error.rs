use thiserror::Error;

use crate::instance::PointId;

#[derive(Debug, Error)]
pub enum CfpoError {
    #[error("unknown point identifier {0}")]
    UnknownPoint(PointId),
    #[error("mismatched point sets: {0}")]
    MismatchedPoints(String),
    #[error("not a permutation: {0}")]
    NotAPermutation(String),
    #[error("not an automorphism: {0}")]
    NotAnAutomorphism(String),
    #[error("invalid instance: {0}")]
    InvalidInstance(String),
    #[error("group order exceeds bound {bound} (at least {reached} elements)")]
    OrderExceedsBound { bound: usize, reached: usize },
    #[error("wrong tuple arity: expected 60, got {0}")]
    WrongArity(usize),
    #[error("not an A5 tuple: {0}")]
    NotA5Tuple(String),
    #[error("restriction set is not a union of extended connected components")]
    NotEccUnion,
    #[error("no orbit of length 30 at the given point")]
    NoOrbit30,
    #[error("orbit is not aligned with whole cones of a fixed point")]
    OrbitNotConeAligned,
    #[error("no regular orbit of length 60")]
    NoRegularOrbit60,
    #[error("tuple has {0} extended connected components, expected exactly one")]
    NotIndecomposable(usize),
    #[error("support is the whole point set; no attachment point exists")]
    SupportIsEverything,
    #[error("attachment point is not unique: candidates {0:?}")]
    AttachmentNotUnique(Vec<PointId>),
    #[error("syntactic backend requires full group enumeration")]
    EnumerationRequired,
    #[error("census is incomplete; syntactic quantifier unsound")]
    CensusIncomplete,
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, CfpoError>;
