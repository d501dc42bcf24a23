use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("rank mismatch: expected {expected}, found {found}")]
    RankMismatch { expected: usize, found: usize },
    #[error("{w} is not c-sortable for c = {c}")]
    NotSortable { w: String, c: String },
    #[error("index out of range: {0}")]
    IndexOutOfRange(String),
    #[error("representation does not match the algebra: {0}")]
    AlgebraMismatch(String),
    #[error("Hom-count system is singular; the catalogue is incomplete")]
    SingularSystem,
    #[error("decomposition produced a non-integral or negative multiplicity")]
    NegativeMultiplicity,
    #[error("total dimension {dim} exceeds the bound {bound}")]
    DimensionBoundExceeded { dim: usize, bound: usize },
    #[error("object is not a member of the subcategory")]
    NotMember,
    #[error("enumeration overflow: {0}")]
    EnumerationOverflow(String),
    #[error("invalid specification: {0}")]
    InvalidSpec(String),
    #[error("invalid class: {0}")]
    InvalidClass(String),
}
