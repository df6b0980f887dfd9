//! Fixed-precision dyadic arithmetic over exact rationals.
//!
//! A dyadic value is a rational whose denominator is a power of two, i.e.
//! a binary floating-point number of configurable mantissa width. The
//! functions here round rationals to a requested width and compute honest
//! rational enclosures of `ln`, `exp` and `a^p`: the returned interval is
//! guaranteed to contain the true value because every series is summed
//! exactly in rationals together with an explicit truncation bound.

use std::sync::OnceLock;

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{Integer, One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

fn two() -> BigRational {
    BigRational::from_integer(BigInt::from(2))
}

/// `2^k` as an exact rational, for any sign of `k`.
pub fn pow2(k: i64) -> BigRational {
    if k >= 0 {
        BigRational::from_integer(BigInt::one() << (k as usize))
    } else {
        BigRational::new(BigInt::one(), BigInt::one() << ((-k) as usize))
    }
}

fn round_div(a: &BigInt, b: &BigInt) -> BigInt {
    // round-to-nearest of a/b for b > 0, halves away from floor
    (&(a * 2i32) + b).div_floor(&(b * 2i32))
}

fn div_ceil(a: &BigInt, b: &BigInt) -> BigInt {
    -((-a).div_floor(b))
}

fn scaled(x: &BigRational, shift: i64, mode: i8) -> BigRational {
    // q = dir(x * 2^shift), result q / 2^shift; mode -1 floor, 0 nearest, +1 ceil
    let (num, den) = (x.numer(), x.denom());
    let (a, b) = if shift >= 0 {
        (num << (shift as usize), den.clone())
    } else {
        (num.clone(), den << ((-shift) as usize))
    };
    let q = match mode {
        -1 => a.div_floor(&b),
        1 => div_ceil(&a, &b),
        _ => round_div(&a, &b),
    };
    if shift >= 0 {
        BigRational::new(q, BigInt::one() << (shift as usize))
    } else {
        BigRational::from_integer(q << ((-shift) as usize))
    }
}

fn magnitude(x: &BigRational) -> i64 {
    x.numer().bits() as i64 - x.denom().bits() as i64
}

/// Round `x` to a dyadic with roughly `bits` significant bits.
///
/// The relative error is at most `2^-bits`.
pub fn round_to_bits(x: &BigRational, bits: u32) -> BigRational {
    if x.is_zero() {
        return BigRational::zero();
    }
    scaled(x, bits as i64 - magnitude(x), 0)
}

/// Round `x` downward (toward -inf) to roughly `bits` significant bits.
pub fn floor_to_bits(x: &BigRational, bits: u32) -> BigRational {
    if x.is_zero() {
        return BigRational::zero();
    }
    scaled(x, bits as i64 - magnitude(x), -1)
}

/// Round `x` upward (toward +inf) to roughly `bits` significant bits.
pub fn ceil_to_bits(x: &BigRational, bits: u32) -> BigRational {
    if x.is_zero() {
        return BigRational::zero();
    }
    scaled(x, bits as i64 - magnitude(x), 1)
}

/// Enclosure of `ln 2`, cached at 512 bits.
fn ln2_enclosure() -> &'static (BigRational, BigRational) {
    static LN2: OnceLock<(BigRational, BigRational)> = OnceLock::new();
    LN2.get_or_init(|| {
        // ln 2 = 2 atanh(1/3)
        let z = BigRational::new(BigInt::one(), BigInt::from(3));
        let (lo, hi) = atanh_enclosure(&z, 520);
        (lo * two(), hi * two())
    })
}

/// `floor(x * 2^w)`: the fixed-point image of a rational.
fn to_fixed(x: &BigRational, w: u32) -> BigInt {
    (x.numer() << (w as usize)).div_floor(x.denom())
}

/// Partial sum of the atanh series plus a rational tail bound.
///
/// Requires `0 ≤ z ≤ 1/2`; returns `[S - slop, S + R + slop]` with
/// `atanh(z)` inside. The series runs in integer fixed point (scale
/// `2^w`, `w = bits + 48`); every rounding there is worth at most one
/// ulp per operation, which the slop dominates comfortably.
fn atanh_enclosure(z: &BigRational, bits: u32) -> (BigRational, BigRational) {
    if z.is_zero() {
        return (BigRational::zero(), BigRational::zero());
    }
    let w = bits + 48;
    let one_w = BigInt::one() << (w as usize);
    let z_fix = to_fixed(z, w);
    let z2_fix = (&z_fix * &z_fix) >> (w as usize);
    let stop = BigInt::one() << ((w - bits - 8) as usize);
    let mut term = z_fix; // z^(2i+1), scaled by 2^w
    let mut sum = BigInt::zero();
    let mut i: u32 = 0;
    loop {
        sum += &term / BigInt::from(2 * i + 1);
        term = (&term * &z2_fix) >> (w as usize);
        i += 1;
        if term < stop || i > 4 * bits {
            break;
        }
    }
    // tail: sum_{j>=i} z^(2j+1)/(2j+1) <= T / ((2i+1)(1 - z^2)) where T
    // over-approximates the first dropped power
    let t_over = BigRational::new(term + BigInt::from(4 * i + 8), one_w.clone());
    let z2 = z * z;
    let tail =
        t_over / (BigRational::from_integer(BigInt::from(2 * i + 1)) * (BigRational::one() - z2));
    let slop = pow2(-(bits as i64 + 20));
    let s = BigRational::new(sum, one_w);
    (&s - &slop, s + tail + slop)
}

/// Rational enclosure of `ln x` for `x > 0`, with width about `2^-bits`.
pub fn ln_enclosure(x: &BigRational, bits: u32) -> Result<(BigRational, BigRational)> {
    if !x.is_positive() {
        return Err(Error::NotPositive);
    }
    let work = bits + 24;
    // range-reduce: m = x / 2^e in [1, 2)
    let mut e = magnitude(x);
    let mut m = x * pow2(-e);
    while m < BigRational::one() {
        e -= 1;
        m = &m * two();
    }
    while m >= two() {
        e += 1;
        m = &m / two();
    }
    // rounding m to `work` bits perturbs ln by at most 2^-(work-2) since m >= 1
    let m = round_to_bits(&m, work);
    let slop = pow2(-(work as i64 - 3));
    let z = (&m - BigRational::one()) / (&m + BigRational::one());
    let (alo, ahi) = atanh_enclosure(&z, work);
    let (l2lo, l2hi) = ln2_enclosure();
    let (elo, ehi) = if e >= 0 {
        (l2lo * BigRational::from_integer(BigInt::from(e)), l2hi * BigRational::from_integer(BigInt::from(e)))
    } else {
        (l2hi * BigRational::from_integer(BigInt::from(e)), l2lo * BigRational::from_integer(BigInt::from(e)))
    };
    let lo = elo + alo * two() - &slop;
    let hi = ehi + ahi * two() + &slop;
    Ok((floor_to_bits(&lo, bits + 8), ceil_to_bits(&hi, bits + 8)))
}

/// Taylor sum of `exp t` with a rational tail bound; `|t| ≤ 3/4`.
///
/// Runs in integer fixed point like [`atanh_enclosure`]; the terms here
/// alternate in sign for negative `t`, so the per-operation rounding
/// error is bounded in magnitude and swallowed by the slop.
fn exp_series_enclosure(t: &BigRational, bits: u32) -> (BigRational, BigRational) {
    debug_assert!(t.abs() <= BigRational::new(BigInt::from(3), BigInt::from(4)));
    let w = bits + 48;
    let one_w = BigInt::one() << (w as usize);
    let t_fix = to_fixed(t, w);
    let stop = BigInt::one() << ((w - bits - 8) as usize);
    let mut term = one_w.clone(); // t^i / i!, scaled by 2^w
    let mut sum = BigInt::zero();
    let mut i: u32 = 0;
    loop {
        sum += &term;
        i += 1;
        term = ((&term * &t_fix) >> (w as usize)) / BigInt::from(i);
        let small = term.magnitude() < stop.magnitude();
        if (small && i >= 4) || i > 8 * bits {
            break;
        }
    }
    // |tail| <= |term| * sum_{j>=0} (3/4)^j = 4 |term|, inflated to cover
    // the fixed-point rounding of the series itself
    let t_over = BigRational::new(
        BigInt::from(4) * (term.abs() + BigInt::from(4 * i + 8)),
        one_w.clone(),
    ) + pow2(-(bits as i64 + 20));
    let s = BigRational::new(sum, one_w);
    (&s - &t_over, s + t_over)
}

/// Rational enclosure of `exp x`, with width about `2^-bits` relative.
///
/// Rejects `|x| > 2^20` (the result would be astronomically large or small).
pub fn exp_enclosure(x: &BigRational, bits: u32) -> Result<(BigRational, BigRational)> {
    let approx = x.to_f64().ok_or(Error::NoConvergence)?;
    if !approx.is_finite() || approx.abs() > 1_048_576.0 {
        return Err(Error::NoConvergence);
    }
    let work = bits + 24;
    let q = (approx / std::f64::consts::LN_2).round() as i64;
    let (l2lo, l2hi) = ln2_enclosure();
    let qr = BigRational::from_integer(BigInt::from(q));
    // r = x - q ln2; the enclosure of ln2 makes r an interval
    let (rlo, rhi) = if q >= 0 {
        (x - &qr * l2hi, x - &qr * l2lo)
    } else {
        (x - &qr * l2lo, x - &qr * l2hi)
    };
    let rlo = floor_to_bits(&rlo, work);
    let rhi = ceil_to_bits(&rhi, work);
    debug_assert!(rlo <= rhi);
    let (lo, _) = exp_series_enclosure(&rlo, work);
    let (_, hi) = exp_series_enclosure(&rhi, work);
    let scale = pow2(q);
    let lo = floor_to_bits(&(lo * &scale), bits + 8);
    let hi = ceil_to_bits(&(hi * &scale), bits + 8);
    Ok((lo, hi))
}

/// Rational enclosure of `a^p` for `a > 0`, `p > 0` (p need not be an integer).
pub fn pow_enclosure(a: &BigRational, p: &BigRational, bits: u32) -> Result<(BigRational, BigRational)> {
    if !a.is_positive() {
        return Err(Error::NotPositive);
    }
    if !p.is_positive() {
        return Err(Error::NonPositiveExponent);
    }
    let (llo, lhi) = ln_enclosure(a, bits + 16)?;
    // p > 0 preserves interval orientation
    let (plo, phi) = (p * llo, p * lhi);
    let (lo, _) = exp_enclosure(&plo, bits + 8)?;
    let (_, hi) = exp_enclosure(&phi, bits + 8)?;
    Ok((lo, hi))
}

/// `a^p` rounded to `bits` significant bits (midpoint of the enclosure).
pub fn pow_value(a: &BigRational, p: &BigRational, bits: u32) -> Result<BigRational> {
    let (lo, hi) = pow_enclosure(a, p, bits + 8)?;
    let mid = (lo + hi) / two();
    Ok(round_to_bits(&mid, bits))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    fn assert_contains(lo: &BigRational, hi: &BigRational, v: f64) {
        let lof = lo.to_f64().unwrap();
        let hif = hi.to_f64().unwrap();
        assert!(lof <= v && v <= hif, "{v} not in [{lof}, {hif}]");
        assert!(hif - lof < 1e-20, "enclosure too wide: {}", hif - lof);
    }

    #[test]
    fn rounding_keeps_relative_error_small() {
        let x = q(12075, 8) * q(7, 13);
        let r = round_to_bits(&x, 80);
        let err = (&r - &x).abs() / x.clone();
        assert!(err < pow2(-79));
        assert!(floor_to_bits(&x, 80) <= x);
        assert!(ceil_to_bits(&x, 80) >= x);
        let neg = -x.clone();
        assert!(floor_to_bits(&neg, 80) <= neg && ceil_to_bits(&neg, 80) >= neg);
    }

    #[test]
    fn ln_enclosures_match_reference_values() {
        let (lo, hi) = ln_enclosure(&q(2, 1), 128).unwrap();
        assert_contains(&lo, &hi, std::f64::consts::LN_2);
        let (lo, hi) = ln_enclosure(&q(1, 2), 128).unwrap();
        assert_contains(&lo, &hi, -std::f64::consts::LN_2);
        let (lo, hi) = ln_enclosure(&q(17160, 1), 128).unwrap();
        assert_contains(&lo, &hi, 17160f64.ln());
        let (lo, hi) = ln_enclosure(&q(1, 1), 128).unwrap();
        assert!(lo.is_negative() || lo.is_zero());
        assert!(!hi.is_negative());
    }

    #[test]
    fn exp_enclosures_match_reference_values() {
        let (lo, hi) = exp_enclosure(&q(1, 1), 128).unwrap();
        assert_contains(&lo, &hi, std::f64::consts::E);
        let (lo, hi) = exp_enclosure(&q(-7, 2), 128).unwrap();
        assert_contains(&lo, &hi, (-3.5f64).exp());
        let (lo, hi) = exp_enclosure(&BigRational::zero(), 128).unwrap();
        assert!(lo <= BigRational::one() && BigRational::one() <= hi);
    }

    #[test]
    fn pow_agrees_with_f64_powf() {
        for (a, p) in [
            (q(4, 1), q(1, 2)),
            (q(2, 3), q(1139, 1000)),
            (q(17160, 1), q(139, 1000)),
            (q(1, 2), q(7, 5)),
        ] {
            let v = pow_value(&a, &p, 128).unwrap().to_f64().unwrap();
            let want = a.to_f64().unwrap().powf(p.to_f64().unwrap());
            assert!((v - want).abs() <= 1e-12 * want.abs().max(1.0), "{v} vs {want}");
        }
    }

    #[test]
    fn pow_enclosure_of_square_root_brackets_exact_value() {
        let (lo, hi) = pow_enclosure(&q(4, 1), &q(1, 2), 128).unwrap();
        assert!(lo <= q(2, 1) && q(2, 1) <= hi);
    }
}
