use thiserror::Error;

/// Errors raised by the polynomial, linear-algebra and bundle machinery.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("syntax error at byte {pos}: {msg}")]
    Syntax { pos: usize, msg: String },

    #[error("inhomogeneous polynomial: found terms of degree {first} and {second}")]
    Inhomogeneous { first: String, second: String },

    #[error("unknown variable `{name}` at byte {pos}")]
    UnknownVariable { name: String, pos: usize },

    #[error("degree mismatch: expected {expected}, found {found}")]
    DegreeMismatch { expected: String, found: String },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("invalid bundle: {0}")]
    InvalidBundle(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("sections belong to different bundles")]
    MixedBundles,

    #[error("wrong number of sections: expected {expected}, found {found}")]
    WrongSectionCount { expected: usize, found: usize },

    #[error("sections are not generically point-wise linearly independent")]
    NotGpli,

    #[error("sections are linearly dependent modulo the relation subspace")]
    DependentSections,

    #[error("degree pattern is inconsistent: {0}")]
    InconsistentDegreePattern(String),

    #[error("the two linear forms of the last row are linearly dependent")]
    DependentLinearForms,

    #[error("the quadric of the last row lies in the ideal of the two linear forms")]
    QuadricInIdeal,

    #[error("polynomial must be nonzero")]
    ZeroPolynomial,

    #[error("generator list is empty")]
    EmptyGenerators,

    #[error("matrix file, line {line}: {msg}")]
    MatrixFormat { line: usize, msg: String },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
