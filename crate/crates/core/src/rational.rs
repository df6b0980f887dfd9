//! Exact rational scalars: the text format shared by the CLI and fixture
//! files, plus rational square-root enclosures.
//!
//! The text format accepts integers (`42`, `-3`), fractions (`p/q`) and
//! decimal literals (`34.5`, which parses exactly as `69/2`). Canonical
//! output is `p` or `p/q` with a positive denominator in lowest terms.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Parse a rational scalar from its text form.
pub fn parse_rational(text: &str) -> Result<BigRational> {
    let t = text.trim();
    if t.is_empty() {
        return Err(Error::Parse("empty rational literal".into()));
    }
    if let Some((num, den)) = t.split_once('/') {
        let n: BigInt = num
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("bad numerator in {t:?}")))?;
        let d: BigInt = den
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("bad denominator in {t:?}")))?;
        if d.is_zero() {
            return Err(Error::Parse(format!("zero denominator in {t:?}")));
        }
        return Ok(BigRational::new(n, d));
    }
    if t.contains('.') {
        return parse_decimal(t).ok_or_else(|| Error::Parse(format!("bad decimal literal {t:?}")));
    }
    let n: BigInt = t
        .parse()
        .map_err(|_| Error::Parse(format!("bad integer literal {t:?}")))?;
    Ok(BigRational::from_integer(n))
}

fn parse_decimal(t: &str) -> Option<BigRational> {
    let (negative, rest) = match t.as_bytes().first()? {
        b'-' => (true, &t[1..]),
        b'+' => (false, &t[1..]),
        _ => (false, t),
    };
    let (int_part, frac_part) = rest.split_once('.')?;
    if int_part.is_empty() && frac_part.is_empty() {
        return None;
    }
    if !int_part.bytes().all(|b| b.is_ascii_digit()) || !frac_part.bytes().all(|b| b.is_ascii_digit())
    {
        return None;
    }
    let digits = format!("{int_part}{frac_part}");
    let num: BigInt = digits.parse().ok()?;
    let den = BigInt::from(10u32).pow(frac_part.len() as u32);
    let value = BigRational::new(num, den);
    Some(if negative { -value } else { value })
}

/// Canonical text form: `p` when the denominator is 1, otherwise `p/q`.
pub fn format_rational(x: &BigRational) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Rational enclosure `[lo, hi]` of `√x` with `hi - lo ≤ eps`.
///
/// Requires `x ≥ 0` and `eps > 0`; the invariant `lo² ≤ x ≤ hi²` holds.
pub fn sqrt_enclosure(x: &BigRational, eps: &BigRational) -> (BigRational, BigRational) {
    assert!(!x.is_negative(), "sqrt of a negative rational");
    assert!(eps.is_positive(), "enclosure width must be positive");
    if x.is_zero() {
        return (BigRational::zero(), BigRational::zero());
    }
    let one = BigRational::one();
    let mut lo = BigRational::zero();
    let mut hi = if *x > one { x.clone() } else { one };
    while &hi - &lo > *eps {
        let mid = (&lo + &hi) / BigRational::from_integer(BigInt::from(2));
        if &mid * &mid <= *x {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    (lo, hi)
}
