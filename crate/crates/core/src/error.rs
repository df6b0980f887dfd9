use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Errors shared by the polynomial, stability and construction APIs.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("coefficient sequence is empty")]
    EmptyCoefficients,
    #[error("leading coefficient is zero")]
    ZeroLeadingCoefficient,
    #[error("degree of g ({deg_g}) exceeds degree of f ({deg_f})")]
    DegreeOrder { deg_f: usize, deg_g: usize },
    #[error("window degree {m} is outside 1..={deg}")]
    BadWindowDegree { m: usize, deg: usize },
    #[error("Hadamard power exponent must be strictly positive")]
    NonPositiveExponent,
    #[error("degree {degree} is too small; need at least {min}")]
    DegreeTooSmall { degree: usize, min: usize },
    #[error("operation is undefined for degree-zero polynomials")]
    DegreeZero,
    #[error("polynomial must have all coefficients strictly positive")]
    NotPositive,
    #[error("root iteration did not converge within its budget")]
    NoConvergence,
    #[error("enclosure refinement could not separate the query value")]
    EnclosureTooWide,
    #[error("input polynomial must be Hurwitz stable")]
    NotStableInput,
    #[error("extension search exhausted its halving budget")]
    SearchBudgetExhausted,
    #[error("prefix of degree {deg_p} overlaps the shift s^{k}")]
    DegreeOverlap { deg_p: usize, k: usize },
    #[error("target degree {m} is invalid for this construction")]
    BadDegree { m: usize },
    #[error("recurrence seeds must be strictly positive")]
    NonPositiveSeed,
    #[error("epsilon must be strictly positive")]
    NonPositiveEpsilon,
    #[error("maximal coefficient ratio {max_lambda} is not below 1")]
    NotInW { max_lambda: String },
    #[error("construction failed verification: {0}")]
    VerificationFailed(String),
    #[error("parse error: {0}")]
    Parse(String),
}
