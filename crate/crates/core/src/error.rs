use thiserror::Error;

/// Errors raised across the toolkit.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("zero polynomial")]
    ZeroPolynomial,
    #[error("leading coefficient must be nonzero")]
    ZeroLeading,
    #[error("derivative of a constant polynomial is identically zero")]
    ZeroDerivative,
    #[error("degree {found} too small: need at least {required}")]
    DegreeTooSmall { required: usize, found: usize },
    #[error("degree mismatch: {0} vs {1}")]
    DegreeMismatch(usize, usize),
    #[error("root finder did not converge (degree {degree})")]
    RootsDidNotConverge { degree: usize },
    #[error("eigenvalue iteration did not converge (dimension {dim})")]
    EigenDidNotConverge { dim: usize },
    #[error("empty input")]
    Empty,
    #[error("p must be >= 1, got {0}")]
    InvalidExponent(f64),
    #[error("unsupported size {0}")]
    UnsupportedSize(usize),
    #[error("matrix dimension mismatch: {0}")]
    Dimension(String),
    #[error("vector is not a unit vector (norm {0})")]
    NotUnit(f64),
    #[error("negative matrix entry at ({0}, {1})")]
    NegativeEntry(usize, usize),
    #[error("critical point {crit} coincides with simple zero {zero}")]
    DegenerateCriticalPoint { crit: String, zero: String },
    #[error("need at least two distinct zeros")]
    SingleDistinctZero,
    #[error("index {0} out of range")]
    IndexOutOfRange(usize),
    #[error("point lies on an atom of the measure")]
    AtAtom,
    #[error("measure is not normalized (total weight {0})")]
    NotNormalized(f64),
    #[error("non-real zero {0}")]
    NonRealZero(String),
    #[error("matrix is not normal (commutator norm {0})")]
    NotNormal(f64),
    #[error("point is a zero of the polynomial")]
    PointIsZero,
    #[error("all zeros coincide; the ratio is undefined")]
    DegenerateSpread,
    #[error("invalid weight {0}")]
    InvalidWeight(f64),
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error("unknown named instance `{0}`")]
    UnknownInstance(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
