use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("degenerate triple: two of the three points coincide")]
    DegenerateTriple,
    #[error("no finite order found up to cap {cap}")]
    NotFiniteOrder { cap: u64 },
    #[error("transformation is not anticonformal")]
    NotAnticonformal,
    #[error("invalid configuration: {0}")]
    InvalidConfiguration(String),
    #[error("degenerate configuration: {0}")]
    DegenerateConfiguration(String),
    #[error("inconsistent orbit lengths {lengths:?} for N = {n}")]
    InconsistentOrbitLengths { n: u64, lengths: Vec<usize> },
    #[error("invalid lambda: {0}")]
    InvalidLambda(String),
    #[error("integer overflow")]
    Overflow,
    #[error("point is not on the curve (residual {residual:e})")]
    NotOnCurve { residual: f64 },
    #[error("fiber over a cone point is ramified")]
    RamifiedFiber,
    #[error("no lift: solution space of the lift constants has dimension {nullity}")]
    NoLift { nullity: usize },
    #[error("cap exceeded: {needed} > {cap}")]
    CapExceeded { needed: u128, cap: u64 },
    #[error("curve of type ({k},{n}) is not hyperbolic")]
    NonHyperbolic { k: u32, n: usize },
    #[error("map does not send the curve to its conjugate curve")]
    NotAMapToConjugate,
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),
    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    /// True for failures of the numerical machinery (as opposed to bad input).
    pub fn is_numerical(&self) -> bool {
        matches!(
            self,
            Error::NotFiniteOrder { .. }
                | Error::NoLift { .. }
                | Error::CapExceeded { .. }
                | Error::InconsistentOrbitLengths { .. }
                | Error::NotAMapToConjugate
                | Error::NotOnCurve { .. }
                | Error::Overflow
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
