use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("period overflow: lcm of moduli exceeds {}", i64::MAX)]
    PeriodOverflow,
    #[error("invalid modulus {0}: moduli must be positive")]
    InvalidModulus(i64),
    #[error("singular matrix")]
    SingularMatrix,
    #[error("matrix shape error: {0}")]
    Shape(String),
    #[error("class index {index} out of range for a system of {len} classes")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("brute-force cap exceeded: {k} classes > cap {cap}")]
    BruteForceCap { k: usize, cap: usize },
    #[error("{0} is not in the fractional-part spectrum")]
    NotInSpectrum(String),
    #[error("internal invariant violated: {0}")]
    InvariantViolation(String),
    #[error("operation requires unit weights; class {0} has a different weight")]
    NonUnitWeights(usize),
    #[error("weights list has length {weights}, expected {classes}")]
    WeightLength { weights: usize, classes: usize },
    #[error("precondition failed: {0}")]
    SpecViolation(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("minimal polynomial is reducible: {0}")]
    ReducibleMinPoly(String),
    #[error("minimal polynomial must be monic of degree >= 1")]
    NonMonic,
    #[error("coset explosion: {count} representatives exceed cap {cap}")]
    CosetExplosion { count: String, cap: u64 },
    #[error("dimension mismatch: expected {expected} coordinates, got {got}")]
    Dimension { expected: usize, got: usize },
    #[error("element must have integral coordinates: {0}")]
    NotIntegral(String),
}

impl Error {
    /// Stable machine-readable code used in serialized reports.
    pub fn code(&self) -> &'static str {
        match self {
            Error::PeriodOverflow => "period-overflow",
            Error::InvalidModulus(_) => "invalid-modulus",
            Error::SingularMatrix => "singular-matrix",
            Error::Shape(_) => "matrix-shape",
            Error::IndexOutOfRange { .. } => "index-out-of-range",
            Error::BruteForceCap { .. } => "brute-force-cap",
            Error::NotInSpectrum(_) => "not-in-spectrum",
            Error::InvariantViolation(_) => "internal-invariant-violation",
            Error::NonUnitWeights(_) => "nonunit-weights",
            Error::WeightLength { .. } => "weight-length",
            Error::SpecViolation(_) => "spec-violation",
            Error::DivisionByZero => "division-by-zero",
            Error::ReducibleMinPoly(_) => "reducible-min-poly",
            Error::NonMonic => "non-monic",
            Error::CosetExplosion { .. } => "coset-explosion",
            Error::Dimension { .. } => "dimension-mismatch",
            Error::NotIntegral(_) => "not-integral",
        }
    }
}
