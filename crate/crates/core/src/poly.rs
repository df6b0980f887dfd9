//! Dense univariate polynomials over exact rationals and their
//! coefficientwise algebra.
//!
//! Coefficients are stored in ascending degree order: `coeffs[i]` is the
//! coefficient of `s^i`. The sequence is never empty and the last entry is
//! nonzero, so `degree` is always well defined. A polynomial is "positive"
//! when every coefficient is strictly positive; most of the stability
//! machinery is restricted to positive polynomials.

use std::fmt;
use std::str::FromStr;

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, ToPrimitive, Zero};

use crate::dyadic;
use crate::error::{Error, Result};
use crate::rational::{format_rational, parse_rational};

/// A real polynomial with exact rational coefficients, ascending by power.
#[derive(Clone, PartialEq, Eq)]
pub struct Polynomial {
    coeffs: Vec<BigRational>,
}

impl Polynomial {
    /// Build a polynomial from ascending coefficients.
    pub fn new(coeffs: Vec<BigRational>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::EmptyCoefficients);
        }
        if coeffs.last().unwrap().is_zero() {
            return Err(Error::ZeroLeadingCoefficient);
        }
        Ok(Polynomial { coeffs })
    }

    /// Convenience constructor from machine integers.
    pub fn from_integers(coeffs: &[i64]) -> Result<Self> {
        Self::new(
            coeffs
                .iter()
                .map(|&c| BigRational::from_integer(BigInt::from(c)))
                .collect(),
        )
    }

    /// Parse the whitespace-separated text format, e.g. `10 7 3 1` for
    /// `s^3 + 3 s^2 + 7 s + 10`.
    pub fn parse(text: &str) -> Result<Self> {
        let coeffs: Result<Vec<BigRational>> =
            text.split_whitespace().map(parse_rational).collect();
        Self::new(coeffs?)
    }

    /// Canonical text form: whitespace-separated rationals, ascending powers.
    pub fn to_text(&self) -> String {
        self.coeffs
            .iter()
            .map(format_rational)
            .collect::<Vec<_>>()
            .join(" ")
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    /// Coefficient of `s^k`, or zero when `k` exceeds the degree.
    pub fn coeff(&self, k: usize) -> BigRational {
        self.coeffs.get(k).cloned().unwrap_or_else(BigRational::zero)
    }

    /// Membership in the positive class: every coefficient strictly positive.
    pub fn is_positive(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_positive())
    }

    /// The reciprocal polynomial: coefficient sequence reversed.
    ///
    /// When the constant term is zero the reversed sequence is trimmed, so
    /// the degree drops (`f*(s) = s^n f(1/s)` discards roots at the origin).
    /// `f.reversal().reversal() == f` holds whenever the constant term of
    /// `f` is nonzero.
    pub fn reversal(&self) -> Polynomial {
        let mut rev: Vec<BigRational> = self.coeffs.iter().rev().cloned().collect();
        while rev.len() > 1 && rev.last().unwrap().is_zero() {
            rev.pop();
        }
        Polynomial { coeffs: rev }
    }

    /// Coefficientwise product, truncated at `deg g`.
    ///
    /// Requires `deg g ≤ deg f` and both polynomials positive.
    pub fn hadamard_product(&self, g: &Polynomial) -> Result<Polynomial> {
        if g.degree() > self.degree() {
            return Err(Error::DegreeOrder {
                deg_f: self.degree(),
                deg_g: g.degree(),
            });
        }
        if !self.is_positive() || !g.is_positive() {
            return Err(Error::NotPositive);
        }
        let coeffs = g
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, b)| &self.coeffs[i] * b)
            .collect();
        Polynomial::new(coeffs)
    }

    /// The degree-`m` coefficient windows `f_j`, `j = 0..deg f - m`.
    ///
    /// Window `j` has coefficients `a_j ..= a_{j+m}`. Requires
    /// `1 ≤ m ≤ deg f` and `f` positive, so every window is again a
    /// positive polynomial of degree exactly `m`.
    pub fn windows(&self, m: usize) -> Result<Vec<Polynomial>> {
        let n = self.degree();
        if m < 1 || m > n {
            return Err(Error::BadWindowDegree { m, deg: n });
        }
        if !self.is_positive() {
            return Err(Error::NotPositive);
        }
        Ok((0..=n - m)
            .map(|j| Polynomial {
                coeffs: self.coeffs[j..=j + m].to_vec(),
            })
            .collect())
    }

    /// The generalized Hadamard product `{F_j = f_j ∘ g}`.
    pub fn generalized_hadamard(&self, g: &Polynomial) -> Result<GeneralizedProduct> {
        if g.degree() > self.degree() {
            return Err(Error::DegreeOrder {
                deg_f: self.degree(),
                deg_g: g.degree(),
            });
        }
        if !g.is_positive() {
            return Err(Error::NotPositive);
        }
        let windows = self.windows(g.degree())?;
        let elements: Result<Vec<Polynomial>> =
            windows.iter().map(|w| w.hadamard_product(g)).collect();
        Ok(GeneralizedProduct {
            f: self.clone(),
            g: g.clone(),
            windows,
            elements: elements?,
        })
    }

    /// The Hadamard power `f^[p]`: every coefficient raised to `p`.
    ///
    /// Integer exponents are computed exactly. Fractional exponents are
    /// evaluated in binary floating point with `precision` mantissa bits
    /// and the rounded values are re-embedded as exact rationals, so all
    /// downstream minor computation is exact relative to the rounding.
    pub fn hadamard_power(&self, p: &BigRational, precision: u32) -> Result<Polynomial> {
        if !p.is_positive() {
            return Err(Error::NonPositiveExponent);
        }
        if !self.is_positive() {
            return Err(Error::NotPositive);
        }
        let coeffs: Result<Vec<BigRational>> = if p.is_integer() {
            let e = p
                .to_integer()
                .to_u32()
                .ok_or_else(|| Error::Parse("integer exponent too large".into()))?;
            Ok(self.coeffs.iter().map(|a| rational_pow(a, e)).collect())
        } else {
            self.coeffs
                .iter()
                .map(|a| dyadic::pow_value(a, p, precision))
                .collect()
        };
        Polynomial::new(coeffs?)
    }

    /// The coefficient ratios `λ_i = a_{i-2} a_{i+1} / (a_i a_{i-1})` for
    /// `i = 2 ..= n-1`. Requires degree at least 3 and `f` positive.
    pub fn lambdas(&self) -> Result<LambdaVector> {
        let n = self.degree();
        if n < 3 {
            return Err(Error::DegreeTooSmall { degree: n, min: 3 });
        }
        if !self.is_positive() {
            return Err(Error::NotPositive);
        }
        let values = (2..n)
            .map(|i| {
                (&self.coeffs[i - 2] * &self.coeffs[i + 1])
                    / (&self.coeffs[i] * &self.coeffs[i - 1])
            })
            .collect();
        Ok(LambdaVector { values })
    }

    /// `prefix(s) + s^k * f(s)`, of degree `k + deg f`.
    ///
    /// Requires `k ≥ 1` and `deg prefix ≤ k - 1`; degrees between
    /// `deg prefix` and `k` are filled with zero coefficients.
    pub fn prepend(prefix: &Polynomial, k: usize, f: &Polynomial) -> Result<Polynomial> {
        if k < 1 || prefix.degree() > k - 1 {
            return Err(Error::DegreeOverlap {
                deg_p: prefix.degree(),
                k,
            });
        }
        let mut coeffs = prefix.coeffs.clone();
        coeffs.resize(k, BigRational::zero());
        coeffs.extend(f.coeffs.iter().cloned());
        Polynomial::new(coeffs)
    }
}

fn rational_pow(a: &BigRational, e: u32) -> BigRational {
    let mut acc = BigRational::one();
    let mut base = a.clone();
    let mut e = e;
    while e > 0 {
        if e & 1 == 1 {
            acc *= &base;
        }
        e >>= 1;
        if e > 0 {
            base = &base * &base;
        }
    }
    acc
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial({})", self.to_text())
    }
}

impl FromStr for Polynomial {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Polynomial::parse(s)
    }
}

/// The ratio vector `λ_2 .. λ_{n-1}` of a positive polynomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LambdaVector {
    values: Vec<BigRational>,
}

impl LambdaVector {
    /// `λ_i` for a subscript `i` in `2 ..= n-1`.
    pub fn get(&self, i: usize) -> Option<&BigRational> {
        if i < 2 {
            return None;
        }
        self.values.get(i - 2)
    }

    /// The values in subscript order, starting at `λ_2`.
    pub fn values(&self) -> &[BigRational] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn max(&self) -> &BigRational {
        self.values.iter().max().expect("lambda vector is nonempty")
    }

    pub fn sum(&self) -> BigRational {
        self.values.iter().fold(BigRational::zero(), |acc, v| acc + v)
    }

    /// True when every ratio is strictly below `bound`.
    pub fn all_below(&self, bound: &BigRational) -> bool {
        self.max() < bound
    }
}

/// The generalized Hadamard product `f • g = {F_0, ..., F_{n-m}}` together
/// with its factors and the coefficient windows of `f` it was built from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneralizedProduct {
    f: Polynomial,
    g: Polynomial,
    windows: Vec<Polynomial>,
    elements: Vec<Polynomial>,
}

impl GeneralizedProduct {
    pub fn factors(&self) -> (&Polynomial, &Polynomial) {
        (&self.f, &self.g)
    }

    pub fn windows(&self) -> &[Polynomial] {
        &self.windows
    }

    pub fn elements(&self) -> &[Polynomial] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }
}
