//! Stability verdicts, class memberships and the combined report.
//!
//! The verdict is decided exactly when possible: a polynomial passing the
//! Routh–Hurwitz criterion is `Stable` with no numeric work. Otherwise the
//! root oracle separates `QuasiStable` (all real parts below the
//! tolerance, some root within it of the axis) from `Unstable`.

use std::fmt;
use std::str::FromStr;

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed};

use crate::constants::{is_below, ConstantKind};
use crate::error::{Error, Result};
use crate::hurwitz::{is_hurwitz_stable, leading_principal_minors};
use crate::poly::{LambdaVector, Polynomial};
use crate::rational::format_rational;
use crate::roots::{roots_oracle, ComplexRoot};
use crate::DEFAULT_ROOT_PRECISION;

/// Three-way stability verdict.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Stable,
    QuasiStable,
    Unstable,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Stable => "stable",
            Verdict::QuasiStable => "quasi-stable",
            Verdict::Unstable => "unstable",
        })
    }
}

impl FromStr for Verdict {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "stable" => Ok(Verdict::Stable),
            "quasi-stable" => Ok(Verdict::QuasiStable),
            "unstable" => Ok(Verdict::Unstable),
            other => Err(Error::Parse(format!("unknown verdict {other:?}"))),
        }
    }
}

/// Class membership flags.
///
/// For degrees 1 and 2 every ratio class coincides with the stable class
/// by convention, so all flags equal the stability flag there.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Memberships {
    /// All coefficients strictly positive.
    pub positive: bool,
    /// Every ratio `λ_i < 1`.
    pub lambda_lt_one: bool,
    /// Every ratio `λ_i < α*` (forces stability).
    pub lambda_lt_alpha_star: bool,
    /// Every ratio `λ_i < β* = √α*`.
    pub lambda_lt_beta_star: bool,
    /// `Σ λ_i < 1` (Kleptsyn's condition, forces stability).
    pub lambda_sum_lt_one: bool,
}

/// The combined stability report for one polynomial.
#[derive(Clone, Debug)]
pub struct StabilityReport {
    pub verdict: Verdict,
    pub minors: Vec<BigRational>,
    pub lambdas: Option<LambdaVector>,
    pub memberships: Memberships,
    /// Roots with `|Re| ≤ tolerance`; populated only when the root oracle ran.
    pub boundary_roots: Vec<ComplexRoot>,
}

/// The default quasi-stability tolerance, `10^-9`.
pub fn default_tolerance() -> BigRational {
    BigRational::new(BigInt::one(), BigInt::from(10u64).pow(9))
}

/// Stability verdict via the exact criterion, falling back to the root
/// oracle to separate quasi-stable from unstable.
pub fn is_quasi_stable(f: &Polynomial, tolerance: &BigRational) -> Result<Verdict> {
    Ok(quasi_verdict(f, tolerance)?.0)
}

pub(crate) fn quasi_verdict(
    f: &Polynomial,
    tolerance: &BigRational,
) -> Result<(Verdict, Vec<ComplexRoot>)> {
    if !tolerance.is_positive() {
        return Err(Error::NonPositiveEpsilon);
    }
    if is_hurwitz_stable(f)? {
        return Ok((Verdict::Stable, Vec::new()));
    }
    let roots = roots_oracle(f, DEFAULT_ROOT_PRECISION)?;
    let all_below = roots.iter().all(|r| &r.re < tolerance);
    let neg_tol = -tolerance.clone();
    let boundary: Vec<ComplexRoot> = roots
        .into_iter()
        .filter(|r| r.re >= neg_tol && &r.re <= tolerance)
        .collect();
    let verdict = if all_below && !boundary.is_empty() {
        Verdict::QuasiStable
    } else {
        Verdict::Unstable
    };
    Ok((verdict, boundary))
}

/// Build the full report for a positive polynomial (error otherwise).
pub fn classify(f: &Polynomial) -> Result<StabilityReport> {
    classify_with(f, &default_tolerance())
}

/// As [`classify`], with an explicit quasi-stability tolerance.
pub fn classify_with(f: &Polynomial, tolerance: &BigRational) -> Result<StabilityReport> {
    if !f.is_positive() {
        return Err(Error::NotPositive);
    }
    report(f, tolerance)
}

/// Build a report for any polynomial of degree at least 1.
///
/// Unlike [`classify`] this accepts non-positive inputs; every membership
/// flag is then false (the classes all live inside the positive cone).
pub fn check(f: &Polynomial, tolerance: &BigRational) -> Result<StabilityReport> {
    report(f, tolerance)
}

fn report(f: &Polynomial, tolerance: &BigRational) -> Result<StabilityReport> {
    let n = f.degree();
    if n == 0 {
        return Err(Error::DegreeZero);
    }
    if !tolerance.is_positive() {
        return Err(Error::NonPositiveEpsilon);
    }
    let minors = leading_principal_minors(f)?;
    let positive = f.is_positive();
    // positive polynomials are decided by the minors already in hand;
    // everything else goes through the general path (which also handles
    // the all-negative normalization)
    let (verdict, boundary_roots) =
        if positive && minors[..n - 1].iter().all(|d| d.is_positive()) {
            (Verdict::Stable, Vec::new())
        } else {
            quasi_verdict(f, tolerance)?
        };
    let stable = verdict == Verdict::Stable;

    let (lambdas, memberships) = if !positive {
        (
            None,
            Memberships {
                positive: false,
                lambda_lt_one: false,
                lambda_lt_alpha_star: false,
                lambda_lt_beta_star: false,
                lambda_sum_lt_one: false,
            },
        )
    } else if n < 3 {
        // ratio classes coincide with the stable class at degrees 1 and 2
        (
            None,
            Memberships {
                positive,
                lambda_lt_one: stable,
                lambda_lt_alpha_star: stable,
                lambda_lt_beta_star: stable,
                lambda_sum_lt_one: stable,
            },
        )
    } else {
        let lambdas = f.lambdas()?;
        let max = lambdas.max();
        let memberships = Memberships {
            positive,
            lambda_lt_one: max < &BigRational::one(),
            lambda_lt_alpha_star: is_below(ConstantKind::AlphaStar, max)?,
            lambda_lt_beta_star: is_below(ConstantKind::BetaStar, max)?,
            lambda_sum_lt_one: lambdas.sum() < BigRational::one(),
        };
        (Some(lambdas), memberships)
    };

    Ok(StabilityReport {
        verdict,
        minors,
        lambdas,
        memberships,
        boundary_roots,
    })
}

impl StabilityReport {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "verdict": self.verdict.to_string(),
            "minors": self.minors.iter().map(format_rational).collect::<Vec<_>>(),
            "lambdas": self.lambdas.as_ref().map(|l| {
                l.values().iter().map(format_rational).collect::<Vec<_>>()
            }),
            "memberships": {
                "positive": self.memberships.positive,
                "lambda_lt_one": self.memberships.lambda_lt_one,
                "lambda_lt_alpha_star": self.memberships.lambda_lt_alpha_star,
                "lambda_lt_beta_star": self.memberships.lambda_lt_beta_star,
                "lambda_sum_lt_one": self.memberships.lambda_sum_lt_one,
            },
            "boundary_roots": self.boundary_roots.iter().map(|r| {
                let (re, im) = r.to_f64();
                serde_json::json!({"re": re, "im": im})
            }).collect::<Vec<_>>(),
        })
    }
}
