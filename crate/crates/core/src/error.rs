use thiserror::Error;

use crate::scalar::FieldSpec;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("relation `{relation}` is not admissible: {reason}")]
    NotAdmissible { relation: String, reason: String },

    #[error("{what}: {needed} exceeds the cap of {cap}")]
    CapExceeded { what: String, needed: String, cap: u64 },

    #[error("{0} requires a finite prime field; refusing to run over Q")]
    RationalFieldUnsupported(&'static str),

    #[error("{0} is undefined for the zero module")]
    ZeroModule(&'static str),

    #[error("modules live over different algebras")]
    AlgebraMismatch,

    #[error("field mismatch: expected {expected}, found {found}")]
    FieldMismatch { expected: FieldSpec, found: FieldSpec },

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("module is not a brick (End has dimension {0})")]
    NotBrick(usize),

    #[error("module is not homogeneous: tau X is not isomorphic to X")]
    NotHomogeneous,

    #[error("algebra has relations; only hereditary (relation-free) algebras are supported here")]
    NotHereditary,

    #[error("input modules are not Hom-orthogonal: {0}")]
    NotHomOrthogonal(String),

    #[error("orthogonality graph has {0} vertices; the exact clique search is limited to 64")]
    TooManyVertices(usize),

    #[error("empty input: {0}")]
    EmptyInput(&'static str),

    #[error("malformed map: {0}")]
    MalformedMap(String),

    #[error("invalid representation: {0}")]
    InvalidRepresentation(String),
}

impl Error {
    pub(crate) fn cap(what: impl Into<String>, needed: impl ToString, cap: u64) -> Self {
        Error::CapExceeded {
            what: what.into(),
            needed: needed.to_string(),
            cap,
        }
    }
}
