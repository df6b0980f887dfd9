//! Certified rational enclosures of the thresholds that govern the
//! coefficient-ratio classes.
//!
//! * `α*` is the unique real solution of `α (1+α)² = 1` (about 0.46557);
//!   ratio vectors entirely below `α*` force Hurwitz stability
//!   (Katkova–Vishnyakova).
//! * `β* = √α*` (about 0.68233): a product of two ratios below `β*` is
//!   below `α*`.
//! * `γ*` is the unique real solution of `γ (γ-1)² = 1 - 4γ` (about
//!   0.21676): ratios below `γ*` make the half Hadamard power stable.
//!
//! Each constant is held as a rational interval whose endpoints produce
//! opposite signs of the defining residual, so containment is proved by
//! exact arithmetic. Comparisons against rationals refine the enclosure
//! by bisection until the query value falls strictly outside.

use std::cmp::Ordering;
use std::fmt;
use std::sync::OnceLock;

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::rational::sqrt_enclosure;

/// Which certified constant is meant.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ConstantKind {
    AlphaStar,
    BetaStar,
    GammaStar,
}

impl fmt::Display for ConstantKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ConstantKind::AlphaStar => "alpha-star",
            ConstantKind::BetaStar => "beta-star",
            ConstantKind::GammaStar => "gamma-star",
        })
    }
}

/// A rational enclosure `[lo, hi]` of one of the constants, certified by a
/// sign change of the defining residual across the endpoints.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CertifiedConstant {
    pub kind: ConstantKind,
    pub lo: BigRational,
    pub hi: BigRational,
}

impl CertifiedConstant {
    pub fn width(&self) -> BigRational {
        &self.hi - &self.lo
    }

    pub fn midpoint(&self) -> BigRational {
        (&self.lo + &self.hi) / BigRational::from_integer(BigInt::from(2))
    }

    pub fn midpoint_f64(&self) -> f64 {
        self.midpoint().to_f64().unwrap_or(f64::NAN)
    }

    pub fn contains(&self, x: &BigRational) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    /// The larger of the absolute residuals at the two endpoints.
    pub fn residual_bound(&self) -> BigRational {
        residual(self.kind, &self.lo)
            .abs()
            .max(residual(self.kind, &self.hi).abs())
    }

    /// Bisect down to `width ≤ target`.
    pub fn refined(&self, target: &BigRational) -> CertifiedConstant {
        let mut lo = self.lo.clone();
        let mut hi = self.hi.clone();
        let two = BigRational::from_integer(BigInt::from(2));
        while &hi - &lo > *target {
            let mid = (&lo + &hi) / &two;
            if residual(self.kind, &mid).is_negative() {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        CertifiedConstant {
            kind: self.kind,
            lo,
            hi,
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "kind": self.kind.to_string(),
            "lo": crate::rational::format_rational(&self.lo),
            "hi": crate::rational::format_rational(&self.hi),
            "lo_f64": self.lo.to_f64(),
            "hi_f64": self.hi.to_f64(),
            "width": self.width().to_f64(),
            "residual_bound": crate::rational::format_rational(&self.residual_bound()),
        })
    }
}

/// The defining residual; strictly increasing in `x` on `[0, 1]`, negative
/// left of the constant and positive right of it.
pub fn residual(kind: ConstantKind, x: &BigRational) -> BigRational {
    let one = BigRational::one();
    match kind {
        // α(1+α)² - 1
        ConstantKind::AlphaStar => x * (&one + x) * (&one + x) - one,
        // β³ + β - 1, equivalent to β(1+β²) = 1, the positive square root
        // branch of the α* equation
        ConstantKind::BetaStar => x * x * x + x - one,
        // γ(γ-1)² - (1 - 4γ)
        ConstantKind::GammaStar => {
            let lhs = x * (x - &one) * (x - &one);
            let rhs = &one - BigRational::from_integer(BigInt::from(4)) * x;
            lhs - rhs
        }
    }
}

fn target_width() -> BigRational {
    // 10^-12
    BigRational::new(BigInt::one(), BigInt::from(10u64).pow(12))
}

fn bisect(kind: ConstantKind) -> CertifiedConstant {
    let lo = BigRational::zero();
    let hi = BigRational::one();
    debug_assert!(residual(kind, &lo).is_negative());
    debug_assert!(residual(kind, &hi).is_positive());
    CertifiedConstant { kind, lo, hi }.refined(&target_width())
}

/// The memoized base enclosure (width at most 10^-12) of a constant.
pub fn certified_constant(kind: ConstantKind) -> &'static CertifiedConstant {
    static ALPHA: OnceLock<CertifiedConstant> = OnceLock::new();
    static BETA: OnceLock<CertifiedConstant> = OnceLock::new();
    static GAMMA: OnceLock<CertifiedConstant> = OnceLock::new();
    match kind {
        ConstantKind::AlphaStar => ALPHA.get_or_init(|| bisect(ConstantKind::AlphaStar)),
        ConstantKind::GammaStar => GAMMA.get_or_init(|| bisect(ConstantKind::GammaStar)),
        ConstantKind::BetaStar => BETA.get_or_init(|| {
            // the square root of the α* enclosure brackets β*; the sqrt
            // sub-enclosures are taken a little tighter so the result
            // still meets the 10^-12 width target
            let alpha = certified_constant(ConstantKind::AlphaStar);
            let eps = &target_width() / BigRational::from_integer(BigInt::from(16));
            let lo = sqrt_enclosure(&alpha.lo, &eps).0;
            let hi = sqrt_enclosure(&alpha.hi, &eps).1;
            let beta = CertifiedConstant {
                kind: ConstantKind::BetaStar,
                lo,
                hi,
            };
            assert!(residual(ConstantKind::BetaStar, &beta.lo).is_negative());
            assert!(residual(ConstantKind::BetaStar, &beta.hi).is_positive());
            beta.refined(&target_width())
        }),
    }
}

/// Compare a rational against a constant by enclosure refinement.
///
/// While the value sits inside the enclosure the interval is bisected;
/// refinement below width 10^-30 without separation reports
/// `EnclosureTooWide` (unreachable for any value of moderate height, since
/// the constants are irrational).
pub fn compare(kind: ConstantKind, value: &BigRational) -> Result<Ordering> {
    let floor = BigRational::new(BigInt::one(), BigInt::from(10u64).pow(30));
    let mut enc = certified_constant(kind).clone();
    loop {
        if value <= &enc.lo {
            return Ok(Ordering::Less);
        }
        if value >= &enc.hi {
            return Ok(Ordering::Greater);
        }
        if enc.width() <= floor {
            return Err(Error::EnclosureTooWide);
        }
        let next = enc.width() / BigRational::from_integer(BigInt::from(16));
        enc = enc.refined(&next.max(floor.clone()));
    }
}

/// True when `value` is strictly below the constant.
pub fn is_below(kind: ConstantKind, value: &BigRational) -> Result<bool> {
    Ok(compare(kind, value)? == Ordering::Less)
}
