//! Stable extension and stable prepending.
//!
//! A stable polynomial stays stable after appending a sufficiently small
//! positive top coefficient (continuity of the minors plus the identity
//! `Δ_{k+1} of the extension at 0 = a_n Δ_k of f`). `extend_one` finds
//! such a coefficient by halving from `ε/2`; `extend_stable` iterates it
//! to any target degree; `prepend_stable` transports the construction
//! through the reversal to prepend small low-order terms instead.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::Signed;

use crate::error::{Error, Result};
use crate::hurwitz::{is_hurwitz_stable, leading_principal_minors};
use crate::poly::Polynomial;
use crate::rational::format_rational;

/// Proof object for a stable extension: the appended coefficients, the
/// bound they respect, and the minor vector witnessing stability after
/// each step.
#[derive(Clone, Debug)]
pub struct ExtensionCertificate {
    pub base: Polynomial,
    pub epsilon: BigRational,
    pub appended: Vec<BigRational>,
    pub result: Polynomial,
    pub step_witnesses: Vec<Vec<BigRational>>,
}

impl ExtensionCertificate {
    /// Re-run every check the certificate claims.
    pub fn verify(&self) -> Result<()> {
        let n = self.base.degree();
        if self.result.degree() != n + self.appended.len() {
            return Err(Error::VerificationFailed("degree mismatch".into()));
        }
        for (k, c) in self.result.coeffs().iter().enumerate().take(n + 1) {
            if c != &self.base.coeff(k) {
                return Err(Error::VerificationFailed("base prefix altered".into()));
            }
        }
        for a in &self.appended {
            if !a.is_positive() || a >= &self.epsilon {
                return Err(Error::VerificationFailed(format!(
                    "appended coefficient {} outside (0, {})",
                    format_rational(a),
                    format_rational(&self.epsilon)
                )));
            }
        }
        if !is_hurwitz_stable(&self.result)? {
            return Err(Error::VerificationFailed("extension not stable".into()));
        }
        Ok(())
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "base": self.base.to_text(),
            "epsilon": format_rational(&self.epsilon),
            "appended": self.appended.iter().map(format_rational).collect::<Vec<_>>(),
            "result": self.result.to_text(),
            "step_witnesses": self.step_witnesses.iter().map(|w| {
                w.iter().map(format_rational).collect::<Vec<_>>()
            }).collect::<Vec<_>>(),
        })
    }
}

/// Append one stable top coefficient in `(0, epsilon)`.
///
/// Candidates are `epsilon/2, epsilon/4, ...`; existence is guaranteed,
/// so exhausting 256 halvings signals a bug rather than a math failure.
pub fn extend_one(f: &Polynomial, epsilon: &BigRational) -> Result<(BigRational, Polynomial)> {
    if !epsilon.is_positive() {
        return Err(Error::NonPositiveEpsilon);
    }
    if !is_hurwitz_stable(f)? {
        return Err(Error::NotStableInput);
    }
    let two = BigRational::from_integer(BigInt::from(2));
    let mut candidate = epsilon / &two;
    for _ in 0..256 {
        let mut coeffs = f.coeffs().to_vec();
        coeffs.push(candidate.clone());
        let extended = Polynomial::new(coeffs)?;
        if is_hurwitz_stable(&extended)? {
            return Ok((candidate, extended));
        }
        candidate = &candidate / &two;
    }
    Err(Error::SearchBudgetExhausted)
}

/// Extend a stable polynomial to degree `target_degree` with all appended
/// coefficients in `(0, epsilon)`, keeping per-step minor witnesses.
pub fn extend_stable(
    f: &Polynomial,
    target_degree: usize,
    epsilon: &BigRational,
) -> Result<ExtensionCertificate> {
    if target_degree <= f.degree() {
        return Err(Error::BadDegree { m: target_degree });
    }
    if !epsilon.is_positive() {
        return Err(Error::NonPositiveEpsilon);
    }
    if !is_hurwitz_stable(f)? {
        return Err(Error::NotStableInput);
    }
    let mut current = f.clone();
    let mut appended = Vec::new();
    let mut step_witnesses = Vec::new();
    while current.degree() < target_degree {
        let (coefficient, extended) = extend_one(&current, epsilon)?;
        step_witnesses.push(leading_principal_minors(&extended)?);
        appended.push(coefficient);
        current = extended;
    }
    Ok(ExtensionCertificate {
        base: f.clone(),
        epsilon: epsilon.clone(),
        appended,
        result: current,
        step_witnesses,
    })
}

/// Find a positive prefix `p` of degree `k-1` with `p(s) + s^k f(s)`
/// stable and all prefix coefficients in `(0, epsilon)`.
///
/// Works by extending the reversal of `f` and reversing back; taking
/// `epsilon = 1/m` for growing `m` drives the prefix to zero.
pub fn prepend_stable(
    f: &Polynomial,
    k: usize,
    epsilon: &BigRational,
) -> Result<(Polynomial, Polynomial)> {
    if k < 1 {
        return Err(Error::BadDegree { m: k });
    }
    if !epsilon.is_positive() {
        return Err(Error::NonPositiveEpsilon);
    }
    if !is_hurwitz_stable(f)? {
        return Err(Error::NotStableInput);
    }
    let certificate = extend_stable(&f.reversal(), f.degree() + k, epsilon)?;
    let combined = certificate.result.reversal();
    // the appended top coefficients become the prefix, lowest degree last
    let prefix = Polynomial::new(certificate.appended.iter().rev().cloned().collect())?;
    debug_assert_eq!(combined, Polynomial::prepend(&prefix, k, f)?);
    Ok((prefix, combined))
}
