//! Stabilization through the generalized Hadamard product.
//!
//! Every positive polynomial `f` admits a stable partner `g` such that
//! each element of `f • g` is Hurwitz stable. Two constructions are
//! provided:
//!
//! * [`stabilize`] builds `g` with all ratios equal to a small `ε` chosen
//!   below `α* / max λ_i(f)`, so the ratio multiplicativity
//!   `λ_i(F_j) = λ_{i+j}(f) λ_i(g)` pushes every element into the
//!   `λ < α*` class, which forces stability.
//! * [`stabilize_factorized`] works when `max λ_i(f) < 1`: it raises the
//!   coefficient windows of `f` to the smallest integer power above the
//!   threshold `p* = log α* / log max λ_i(f)` and takes `g` as the
//!   coefficientwise product of those powers, which hands back an explicit
//!   coefficientwise factorization of `g` for free.
//!
//! Both verify their output with the exact Routh–Hurwitz criterion and
//! fail loudly instead of returning an unverified result.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, ToPrimitive};

use crate::constants::{certified_constant, is_below, ConstantKind};
use crate::dyadic::ln_enclosure;
use crate::error::{Error, Result};
use crate::hurwitz::is_hurwitz_stable;
use crate::poly::{GeneralizedProduct, Polynomial};
use crate::rational::format_rational;
use crate::report::{classify, StabilityReport};
use crate::DEFAULT_POWER_PRECISION;

/// A rational interval guaranteed to contain a derived quantity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Enclosure {
    pub lo: BigRational,
    pub hi: BigRational,
}

impl Enclosure {
    pub fn width(&self) -> BigRational {
        &self.hi - &self.lo
    }

    pub fn midpoint_f64(&self) -> f64 {
        ((&self.lo + &self.hi) / BigRational::from_integer(BigInt::from(2)))
            .to_f64()
            .unwrap_or(f64::NAN)
    }
}

/// Construction used by a [`StabilizationResult`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StabilizeMethod {
    LambdaUniform,
    HadamardFactorized,
}

impl std::fmt::Display for StabilizeMethod {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            StabilizeMethod::LambdaUniform => "lambda-uniform",
            StabilizeMethod::HadamardFactorized => "hadamard-factorized",
        })
    }
}

/// A verified stabilizer: the partner polynomial, the resulting product,
/// and per-element stability reports.
#[derive(Clone, Debug)]
pub struct StabilizationResult {
    pub g: Polynomial,
    pub product: GeneralizedProduct,
    pub method: StabilizeMethod,
    /// The ratio level `ε` (lambda-uniform route).
    pub epsilon: Option<BigRational>,
    /// The integer Hadamard power `p` (factorized route).
    pub power: Option<u32>,
    /// Coefficientwise factorization witness of `g` (factorized route).
    pub factors: Option<Vec<Polynomial>>,
    pub verification: Vec<StabilityReport>,
}

impl StabilizationResult {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "g": self.g.to_text(),
            "method": self.method.to_string(),
            "parameters": {
                "epsilon": self.epsilon.as_ref().map(format_rational),
                "power": self.power,
            },
            "product": {
                "f": self.product.factors().0.to_text(),
                "g": self.product.factors().1.to_text(),
                "windows": self.product.windows().iter().map(|w| w.to_text()).collect::<Vec<_>>(),
                "elements": self.product.elements().iter().map(|e| e.to_text()).collect::<Vec<_>>(),
            },
            "factors": self.factors.as_ref().map(|fs| {
                fs.iter().map(|f| f.to_text()).collect::<Vec<_>>()
            }),
            "verification": self.verification.iter().map(|r| r.to_json()).collect::<Vec<_>>(),
        })
    }
}

/// A positive degree-`m` polynomial whose ratios all equal `epsilon`.
///
/// Coefficients follow `b_{k+2} = ε b_{k+1} b_k / b_{k-1}` from three
/// positive seeds (default `(1, 1, 1)`); requires `m ≥ 3`.
pub fn lambda_uniform(
    m: usize,
    epsilon: &BigRational,
    seeds: Option<(BigRational, BigRational, BigRational)>,
) -> Result<Polynomial> {
    if m < 3 {
        return Err(Error::BadDegree { m });
    }
    if !epsilon.is_positive() {
        return Err(Error::NonPositiveEpsilon);
    }
    let (b0, b1, b2) = seeds.unwrap_or_else(|| {
        (
            BigRational::one(),
            BigRational::one(),
            BigRational::one(),
        )
    });
    if !b0.is_positive() || !b1.is_positive() || !b2.is_positive() {
        return Err(Error::NonPositiveSeed);
    }
    let mut coeffs = vec![b0, b1, b2];
    for k in 1..=m - 2 {
        let next = epsilon * &coeffs[k + 1] * &coeffs[k] / &coeffs[k - 1];
        coeffs.push(next);
    }
    Polynomial::new(coeffs)
}

/// Enclosure of `p* = log α* / log max λ_i(f)`.
///
/// Requires degree at least 3 and `max λ_i(f) < 1`; above `p*` every
/// Hadamard power of `f` is stable.
pub fn p_star(f: &Polynomial) -> Result<Enclosure> {
    let lambdas = f.lambdas()?;
    let max = lambdas.max();
    if max >= &BigRational::one() {
        return Err(Error::NotInW {
            max_lambda: format_rational(max),
        });
    }
    let bits = 160;
    // both logarithms are negative; the hulls below keep the quotient honest
    let (a1, a2) = ln_alpha_star_hull();
    let (b1, b2) = ln_enclosure(max, bits)?;
    debug_assert!(a2.is_negative() && b2.is_negative());
    // p = A/B with A in [a1,a2], B in [b1,b2], all negative:
    // p ranges over [a2/b1, a1/b2]
    Ok(Enclosure {
        lo: a2 / b1,
        hi: a1 / b2,
    })
}

/// Cached hull of `ln` over the alpha-star enclosure.
fn ln_alpha_star_hull() -> (BigRational, BigRational) {
    use std::sync::OnceLock;
    static HULL: OnceLock<(BigRational, BigRational)> = OnceLock::new();
    HULL.get_or_init(|| {
        let alpha = certified_constant(ConstantKind::AlphaStar);
        let (lo, _) = ln_enclosure(&alpha.lo, 160).expect("alpha-star is positive");
        let (_, hi) = ln_enclosure(&alpha.hi, 160).expect("alpha-star is positive");
        (lo, hi)
    })
    .clone()
}

/// Outcome of the coefficientwise-factorization sufficiency test.
#[derive(Clone, Debug)]
pub struct FactorizationCheck {
    /// True when `max λ_i(f) < γ*`, which makes `f^[1/2]` stable.
    pub sufficient: bool,
    /// The witness pair `(f^[1/2], f^[1/2])` when sufficient.
    ///
    /// Its coefficientwise product reproduces `f` up to the rounding of
    /// the half power. The test is one-sided: a false result does not
    /// rule out a factorization (every stable cubic has one, for
    /// example).
    pub witness: Option<(Polynomial, Polynomial)>,
}

/// Test `max λ_i(f) < γ*`, the sufficient condition for `f` to split as a
/// coefficientwise product of two stable polynomials.
pub fn factorization_sufficient(f: &Polynomial) -> Result<FactorizationCheck> {
    let lambdas = f.lambdas()?;
    if !is_below(ConstantKind::GammaStar, lambdas.max())? {
        return Ok(FactorizationCheck {
            sufficient: false,
            witness: None,
        });
    }
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    let root = f.hadamard_power(&half, DEFAULT_POWER_PRECISION)?;
    Ok(FactorizationCheck {
        sufficient: true,
        witness: Some((root.clone(), root)),
    })
}

fn all_ones(m: usize) -> Polynomial {
    Polynomial::new(vec![BigRational::one(); m + 1]).expect("nonempty all-ones")
}

fn verified_result(
    f: &Polynomial,
    g: Polynomial,
    method: StabilizeMethod,
    epsilon: Option<BigRational>,
    power: Option<u32>,
    factors: Option<Vec<Polynomial>>,
) -> Result<StabilizationResult> {
    if !is_hurwitz_stable(&g)? {
        return Err(Error::VerificationFailed(format!(
            "partner {} is not stable",
            g.to_text()
        )));
    }
    let product = f.generalized_hadamard(&g)?;
    let mut verification = Vec::with_capacity(product.len());
    for element in product.elements() {
        let report = classify(element)?;
        if report.verdict != crate::report::Verdict::Stable {
            return Err(Error::VerificationFailed(format!(
                "product element {} is not stable",
                element.to_text()
            )));
        }
        verification.push(report);
    }
    if let Some(factors) = &factors {
        let mut acc = all_ones(g.degree());
        for factor in factors {
            if !is_hurwitz_stable(factor)? {
                return Err(Error::VerificationFailed(format!(
                    "factor {} is not stable",
                    factor.to_text()
                )));
            }
            acc = acc.hadamard_product(factor)?;
        }
        if acc != g {
            return Err(Error::VerificationFailed(
                "factor product does not reproduce g".into(),
            ));
        }
    }
    Ok(StabilizationResult {
        g,
        product,
        method,
        epsilon,
        power,
        factors,
        verification,
    })
}

/// Stable partner for any positive polynomial via a ratio-uniform `g`.
///
/// For `m ≥ 3` the level is `ε = α*_lo / (2 max λ_i(f))`, strictly inside
/// the required bound; for `m ∈ {1, 2}` every positive `g` works and the
/// all-ones polynomial is used.
pub fn stabilize(f: &Polynomial, m: usize) -> Result<StabilizationResult> {
    if !f.is_positive() {
        return Err(Error::NotPositive);
    }
    let n = f.degree();
    if m < 1 || m > n {
        return Err(Error::BadDegree { m });
    }
    if m <= 2 {
        return verified_result(f, all_ones(m), StabilizeMethod::LambdaUniform, None, None, None);
    }
    let lambdas = f.lambdas()?;
    let alpha = certified_constant(ConstantKind::AlphaStar);
    // the level must stay below alpha-star twice over: dividing by
    // max(1, max λ) keeps g itself inside the alpha class even when the
    // ratios of f are small, and dividing by max λ keeps every product
    // ratio inside it when they are large
    let cap = lambdas.max().clone().max(BigRational::one());
    let exact = &alpha.lo / (BigRational::from_integer(BigInt::from(2)) * cap);
    // a short mantissa keeps the recurrence denominators small; any
    // positive value at or below the bound works
    let epsilon = crate::dyadic::floor_to_bits(&exact, 24);
    let g = lambda_uniform(m, &epsilon, None)?;
    // ratio multiplicativity puts every element below alpha-star; check it
    // exactly before the minor-based verification
    let g_lambdas = g.lambdas()?;
    for (j, element) in f.generalized_hadamard(&g)?.elements().iter().enumerate() {
        if element.degree() >= 3 {
            let el = element.lambdas()?;
            for i in 2..=element.degree() - 1 {
                let expected = lambdas.get(i + j).unwrap() * g_lambdas.get(i).unwrap();
                if el.get(i) != Some(&expected) {
                    return Err(Error::VerificationFailed(
                        "ratio multiplicativity violated".into(),
                    ));
                }
                if !is_below(ConstantKind::AlphaStar, &expected)? {
                    return Err(Error::VerificationFailed(
                        "element ratio not below alpha-star".into(),
                    ));
                }
            }
        }
    }
    verified_result(
        f,
        g,
        StabilizeMethod::LambdaUniform,
        Some(epsilon),
        None,
        None,
    )
}

/// Stable partner with a coefficientwise factorization witness, for `f`
/// with `max λ_i(f) < 1`.
///
/// Uses the smallest integer `p` strictly above `p*` (integer powers keep
/// the arithmetic exact) and `g = f_0^[p] ∘ ... ∘ f_{n-m}^[p]` over the
/// degree-`m` windows `f_j` of `f`.
pub fn stabilize_factorized(f: &Polynomial, m: usize) -> Result<StabilizationResult> {
    if !f.is_positive() {
        return Err(Error::NotPositive);
    }
    let n = f.degree();
    if m < 1 || m > n {
        return Err(Error::BadDegree { m });
    }
    if m <= 2 {
        // the all-ones polynomial is its own coefficientwise square
        let g = all_ones(m);
        let factors = vec![g.clone(), g.clone()];
        return verified_result(
            f,
            g,
            StabilizeMethod::HadamardFactorized,
            None,
            None,
            Some(factors),
        );
    }
    let threshold = p_star(f)?;
    let p = smallest_integer_above(&threshold.hi);
    let exponent = BigRational::from_integer(BigInt::from(p));
    let windows = f.windows(m)?;
    let factors: Result<Vec<Polynomial>> = windows
        .iter()
        .map(|w| w.hadamard_power(&exponent, DEFAULT_POWER_PRECISION))
        .collect();
    let factors = factors?;
    let mut g = all_ones(m);
    for factor in &factors {
        g = g.hadamard_product(factor)?;
    }
    verified_result(
        f,
        g,
        StabilizeMethod::HadamardFactorized,
        None,
        Some(p),
        Some(factors),
    )
}

fn smallest_integer_above(x: &BigRational) -> u32 {
    let floor = x.floor().to_integer();
    let candidate = floor + BigInt::one();
    let candidate = if candidate.is_positive() {
        candidate
    } else {
        BigInt::one()
    };
    candidate.to_u32().unwrap_or(u32::MAX)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::parse_rational;
    use crate::report::Verdict;

    fn p(text: &str) -> Polynomial {
        Polynomial::parse(text).unwrap()
    }

    fn q(text: &str) -> BigRational {
        parse_rational(text).unwrap()
    }

    #[test]
    fn lambda_uniform_hits_the_requested_level() {
        let g = lambda_uniform(4, &q("1/4"), None).unwrap();
        assert_eq!(g, p("1 1 1 1/4 1/16"));
        for v in g.lambdas().unwrap().values() {
            assert_eq!(v, &q("1/4"));
        }
        // m = 3 forces the single ratio
        let g = lambda_uniform(3, &q("7/5"), None).unwrap();
        assert_eq!(g.lambdas().unwrap().values(), &[q("7/5")]);
        // below alpha-star the result is stable
        let g = lambda_uniform(6, &q("2/5"), None).unwrap();
        assert!(is_hurwitz_stable(&g).unwrap());
        // custom seeds keep the level exact
        let g = lambda_uniform(5, &q("1/3"), Some((q("2"), q("1"), q("5/2")))).unwrap();
        for v in g.lambdas().unwrap().values() {
            assert_eq!(v, &q("1/3"));
        }
        assert_eq!(lambda_uniform(2, &q("1/2"), None), Err(Error::BadDegree { m: 2 }));
        assert_eq!(
            lambda_uniform(4, &q("0"), None),
            Err(Error::NonPositiveEpsilon)
        );
        assert_eq!(
            lambda_uniform(4, &q("1/2"), Some((q("0"), q("1"), q("1")))),
            Err(Error::NonPositiveSeed)
        );
    }

    #[test]
    fn p_star_matches_the_reference_value() {
        // max ratio 1/2 gives p* = ln(alpha*) / ln(1/2) ≈ 1.1029
        let f = p("1 2 4 4 4 2");
        let enc = p_star(&f).unwrap();
        assert!(enc.lo.to_f64().unwrap() > 1.10285);
        assert!(enc.hi.to_f64().unwrap() < 1.10295);
        assert!(enc.width() < q("1/1000000000"));
    }

    #[test]
    fn p_star_rejects_ratios_at_or_above_one() {
        let f = p("1 3 9 27 81");
        assert!(matches!(p_star(&f), Err(Error::NotInW { .. })));
    }

    #[test]
    fn p_star_is_one_when_the_max_ratio_approximates_alpha_star() {
        // ratios pinned to a rational just below alpha-star: the log
        // ratio collapses to 1
        let alpha = certified_constant(ConstantKind::AlphaStar);
        let f = lambda_uniform(5, &alpha.lo, None).unwrap();
        let enc = p_star(&f).unwrap();
        let mid = enc.midpoint_f64();
        assert!((mid - 1.0).abs() < 1e-9, "p* ≈ {mid}");
    }

    #[test]
    fn powers_above_p_star_are_stable() {
        let f = p("3 2 4 2 2"); // unstable, max λ = 3/4
        let enc = p_star(&f).unwrap();
        // p* = ln α* / ln(3/4) ≈ 2.657
        let mid = enc.midpoint_f64();
        assert!((mid - 2.657).abs() < 0.01, "p* ≈ {mid}");
        // a modest margin above p* must already stabilize
        let p_test = q("101/100") * &enc.hi;
        let powered = f.hadamard_power(&p_test, 128).unwrap();
        assert!(is_hurwitz_stable(&powered).unwrap());
    }

    #[test]
    fn factorization_test_is_one_sided() {
        let g = lambda_uniform(5, &q("1/5"), None).unwrap();
        let check = factorization_sufficient(&g).unwrap();
        assert!(check.sufficient);
        let (w1, w2) = check.witness.unwrap();
        assert!(is_hurwitz_stable(&w1).unwrap());
        let back = w1.hadamard_product(&w2).unwrap();
        for (orig, reassembled) in g.coeffs().iter().zip(back.coeffs()) {
            let err = (orig - reassembled).abs() / orig.clone();
            assert!(err < q("1/1000000000000000000000000000000"));
        }
        // max ratio 1/2 > gamma-star: not sufficient (though degree-3
        // stable polynomials always factor)
        let f = p("1 2 4 4 4 2");
        assert!(!factorization_sufficient(&f).unwrap().sufficient);
    }

    #[test]
    fn stabilize_handles_unstable_ratio_bounded_input() {
        let f = p("3 2 4 2 2");
        assert!(!is_hurwitz_stable(&f).unwrap());
        let result = stabilize(&f, 4).unwrap();
        assert_eq!(result.method, StabilizeMethod::LambdaUniform);
        assert_eq!(result.product.len(), 1);
        for report in &result.verification {
            assert_eq!(report.verdict, Verdict::Stable);
        }
    }

    #[test]
    fn stabilize_handles_wildly_unstable_input() {
        // ratios all equal to 5: far outside every stability class
        let f = lambda_uniform(6, &q("5"), None).unwrap();
        assert!(!is_hurwitz_stable(&f).unwrap());
        let result = stabilize(&f, 4).unwrap();
        assert_eq!(result.product.len(), 3);
        for element in result.product.elements() {
            assert!(is_hurwitz_stable(element).unwrap());
        }
    }

    #[test]
    fn stabilize_trivial_branch_uses_all_ones() {
        let f = p("3 2 4 2 2");
        let result = stabilize(&f, 1).unwrap();
        assert_eq!(result.g, p("1 1"));
        assert_eq!(result.product.len(), 4);
        for element in result.product.elements() {
            assert!(is_hurwitz_stable(element).unwrap());
        }
        assert!(matches!(stabilize(&f, 5), Err(Error::BadDegree { m: 5 })));
        assert!(matches!(stabilize(&p("1 -1 1 1 1"), 3), Err(Error::NotPositive)));
    }

    #[test]
    fn factorized_route_reproduces_the_power_of_two_partner() {
        let f = p("1 2 4 4 4 2");
        let result = stabilize_factorized(&f, 4).unwrap();
        assert_eq!(result.power, Some(2));
        assert_eq!(result.g, p("4 64 256 256 64"));
        let elements = result.product.elements();
        assert_eq!(elements[0], p("4 128 1024 1024 256"));
        assert_eq!(elements[1], p("8 256 1024 1024 128"));
        for report in &result.verification {
            assert_eq!(report.verdict, Verdict::Stable);
        }
        let factors = result.factors.unwrap();
        assert_eq!(factors, vec![p("1 4 16 16 16"), p("4 16 16 16 4")]);
    }

    #[test]
    fn factorized_route_at_window_three_needs_only_the_square() {
        // all ratios 1/2 give p* = ln(alpha*)/ln(1/2) < 2, so p = 2
        let f = lambda_uniform(5, &q("1/2"), None).unwrap();
        let result = stabilize_factorized(&f, 3).unwrap();
        assert_eq!(result.power, Some(2));
        assert_eq!(result.product.len(), 3);
        assert!(is_hurwitz_stable(&result.g).unwrap());
        for element in result.product.elements() {
            assert!(is_hurwitz_stable(element).unwrap());
        }
    }

    #[test]
    fn factorized_route_with_full_window_powers_f_itself() {
        // m = n: a single window, so g = f^[p] and the lone product
        // element is f ∘ f^[p] = f^[p+1]
        let f = lambda_uniform(5, &q("1/2"), None).unwrap();
        let result = stabilize_factorized(&f, 5).unwrap();
        let power = result.power.unwrap();
        assert_eq!(power, 2);
        assert_eq!(result.g, f.hadamard_power(&q("2"), 128).unwrap());
        let expected = f.hadamard_power(&q("3"), 128).unwrap();
        assert_eq!(result.product.elements(), &[expected]);
    }

    #[test]
    fn factorized_route_requires_ratios_below_one() {
        let f = lambda_uniform(6, &q("5"), None).unwrap();
        assert!(matches!(stabilize_factorized(&f, 4), Err(Error::NotInW { .. })));
    }
}
