//! Exact stability analysis for real polynomials with positive coefficients.
//!
//! Coefficients are arbitrary-precision rationals and every stability
//! decision is made exactly: Hurwitz matrices, their leading principal
//! minors (fraction-free elimination over integers), the Routh–Hurwitz
//! criterion, and the coefficient-ratio classes built from the ratios
//! `λ_i = a_{i-2} a_{i+1} / (a_i a_{i-1})`.
//!
//! On top of the decision procedures the crate provides:
//!
//! * coefficientwise (Hadamard) products, windowed generalized products,
//!   and Hadamard powers of polynomials;
//! * certified rational enclosures for the thresholds α*, β*, γ* that
//!   govern the ratio classes (Katkova–Vishnyakova and related bounds);
//! * constructive procedures: stable extension by higher-degree terms,
//!   stable prepending, ratio-uniform polynomials, and two stabilizers
//!   that make every element of a generalized product Hurwitz stable;
//! * a numeric root oracle (Aberth iteration polished by exact Newton
//!   steps) used to separate quasi-stable from unstable polynomials and
//!   to cross-check the exact criterion.

pub mod constants;
pub mod dyadic;
mod error;
pub mod extend;
pub mod hurwitz;
pub mod poly;
pub mod rational;
pub mod report;
pub mod roots;
pub mod stabilize;

pub use constants::{certified_constant, is_below, residual, CertifiedConstant, ConstantKind};
pub use error::{Error, Result};
pub use extend::{extend_one, extend_stable, prepend_stable, ExtensionCertificate};
pub use hurwitz::{is_hurwitz_stable, leading_principal_minors, HurwitzMatrix};
pub use poly::{GeneralizedProduct, LambdaVector, Polynomial};
pub use report::{classify, classify_with, is_quasi_stable, Memberships, StabilityReport, Verdict};
pub use roots::{roots_oracle, ComplexRoot};
pub use stabilize::{
    factorization_sufficient, lambda_uniform, p_star, stabilize, stabilize_factorized,
    Enclosure, FactorizationCheck, StabilizationResult, StabilizeMethod,
};

/// Default mantissa precision (bits) for non-integer Hadamard powers.
pub const DEFAULT_POWER_PRECISION: u32 = 128;

/// Default precision (bits) for the numeric root oracle.
pub const DEFAULT_ROOT_PRECISION: u32 = 64;
