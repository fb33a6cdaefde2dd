use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("zero polynomial has no resultant")]
    ZeroResultant,
    #[error("zero polynomial")]
    ZeroPolynomial,
    #[error("discriminant needs degree >= 1")]
    ConstantDiscriminant,
    #[error("point (0:0:0) is not a projective point")]
    ZeroPoint,
    #[error("invalid form: {0}")]
    InvalidForm(String),
    #[error("curve is singular{}", .0.as_ref().map(|p| format!(" at {p}")).unwrap_or_default())]
    Singular(Option<String>),
    #[error("generic-position failure: {0}")]
    GenericPosition(String),
    #[error("no pencil through these points (kernel dimension {0})")]
    NoPencil(usize),
    #[error("no real components")]
    NoRealComponents,
    #[error("Harnack violation: {components} components exceed genus + 1 = {bound}")]
    HarnackViolation { components: usize, bound: usize },
    #[error("pencil is not totally real")]
    NotTotallyReal,
    #[error("sign convention for nested ovals unspecified")]
    NestedOvals,
    #[error("{0}")]
    Precondition(String),
    #[error("refinement limit reached: {0}")]
    Refinement(String),
    #[error("out of range: {0}")]
    OutOfRange(String),
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
}

pub type Result<T> = std::result::Result<T, Error>;
