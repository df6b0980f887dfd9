//! Numeric root oracle: simultaneous Aberth iteration in f64 followed by
//! Newton polishing in fixed-point big-integer arithmetic.
//!
//! The oracle is the independent check against the exact Routh–Hurwitz
//! decision: its verdicts never feed back into the exact path. Roots are
//! returned as complex numbers with dyadic-rational components accurate to
//! the requested number of bits; the contract is that re-expanding
//! `a_n * prod (s - z_i)` reproduces the coefficients of `f` to within
//! `2^(-precision/2)` relative error, and the oracle fails with
//! `NoConvergence` rather than return roots that violate it. The
//! re-expansion itself is exact: polished roots are dyadic, so the product
//! is evaluated in integers with no rounding at all.

use num::bigint::BigInt;
use num::complex::Complex64;
use num::rational::BigRational;
use num::{Integer, One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::poly::Polynomial;

/// A root approximation with exact dyadic-rational components.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComplexRoot {
    pub re: BigRational,
    pub im: BigRational,
}

impl ComplexRoot {
    pub fn to_f64(&self) -> (f64, f64) {
        (
            self.re.to_f64().unwrap_or(f64::NAN),
            self.im.to_f64().unwrap_or(f64::NAN),
        )
    }
}

/// The largest real part among the roots.
pub fn max_real_part(roots: &[ComplexRoot]) -> Option<&BigRational> {
    roots.iter().map(|r| &r.re).max()
}

/// All roots of `f` to roughly `precision` bits.
pub fn roots_oracle(f: &Polynomial, precision: u32) -> Result<Vec<ComplexRoot>> {
    let n = f.degree();
    if n == 0 {
        return Err(Error::DegreeZero);
    }
    // exact roots at the origin: strip leading zero coefficients
    let zeros_at_origin = f.coeffs().iter().take_while(|c| c.is_zero()).count();
    let mut roots: Vec<ComplexRoot> = (0..zeros_at_origin)
        .map(|_| ComplexRoot {
            re: BigRational::zero(),
            im: BigRational::zero(),
        })
        .collect();
    let reduced: Vec<BigRational> = f.coeffs()[zeros_at_origin..].to_vec();
    if reduced.len() == 1 {
        return Ok(roots);
    }

    // clear denominators; roots are unchanged
    let scale = reduced
        .iter()
        .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<BigInt> = reduced
        .iter()
        .map(|c| c.numer() * (&scale / c.denom()))
        .collect();

    let w = precision + 64;
    if ints.len() == 2 {
        // exact linear root -a_0/a_1
        roots.push(ComplexRoot {
            re: crate::dyadic::round_to_bits(
                &BigRational::new(-ints[0].clone(), ints[1].clone()),
                w,
            ),
            im: BigRational::zero(),
        });
        return Ok(roots);
    }

    let deriv: Vec<BigInt> = ints
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| c * BigInt::from(i))
        .collect();

    let mut last_err = Error::NoConvergence;
    for attempt in 0..3 {
        let starts = match aberth(&ints, attempt) {
            Ok(s) => s,
            Err(e) => {
                last_err = e;
                continue;
            }
        };
        let mut polished = Vec::with_capacity(starts.len());
        let mut ok = true;
        for z0 in starts {
            match polish(&ints, &deriv, z0, precision, w) {
                Ok(root) => polished.push(root),
                Err(e) => {
                    last_err = e;
                    ok = false;
                    break;
                }
            }
        }
        if !ok {
            continue;
        }
        match verify_expansion(&ints, &polished, precision, w) {
            Ok(()) => {
                roots.extend(polished.into_iter().map(|(re, im)| ComplexRoot {
                    re: BigRational::new(re, BigInt::one() << (w as usize)),
                    im: BigRational::new(im, BigInt::one() << (w as usize)),
                }));
                return Ok(roots);
            }
            Err(e) => last_err = e,
        }
    }
    Err(last_err)
}

/// Re-expand `leading * prod (s - z_i)` in exact complex-rational
/// arithmetic; coefficients come back as `(re, im)` pairs.
pub fn expand_from_roots(
    roots: &[ComplexRoot],
    leading: &BigRational,
) -> Vec<(BigRational, BigRational)> {
    let mut coeffs: Vec<(BigRational, BigRational)> =
        vec![(BigRational::zero(), BigRational::zero()); roots.len() + 1];
    coeffs[0] = (BigRational::one(), BigRational::zero());
    let mut len = 1;
    for root in roots {
        // multiply by (s - z): new[k] = old[k-1] - z * old[k]
        coeffs[len] = coeffs[len - 1].clone();
        for k in (1..len).rev() {
            let mre = &coeffs[k].0 * &root.re - &coeffs[k].1 * &root.im;
            let mim = &coeffs[k].0 * &root.im + &coeffs[k].1 * &root.re;
            coeffs[k] = (&coeffs[k - 1].0 - mre, &coeffs[k - 1].1 - mim);
        }
        let mre = &coeffs[0].0 * &root.re - &coeffs[0].1 * &root.im;
        let mim = &coeffs[0].0 * &root.im + &coeffs[0].1 * &root.re;
        coeffs[0] = (-mre, -mim);
        len += 1;
    }
    for c in coeffs.iter_mut() {
        c.0 *= leading;
        c.1 *= leading;
    }
    coeffs
}

// ---- fixed-point Newton polish --------------------------------------------

/// Horner evaluation at a fixed-point complex `(zre, zim)`, scale `2^w`.
/// Integer coefficients; the result is scaled by `2^w` as well.
fn eval_fixed(coeffs: &[BigInt], zre: &BigInt, zim: &BigInt, w: u32) -> (BigInt, BigInt) {
    let mut are = BigInt::zero();
    let mut aim = BigInt::zero();
    for c in coeffs.iter().rev() {
        let re = (&are * zre - &aim * zim) >> (w as usize);
        let im = (&are * zim + &aim * zre) >> (w as usize);
        are = re + (c << (w as usize));
        aim = im;
    }
    (are, aim)
}

fn polish(
    coeffs: &[BigInt],
    deriv: &[BigInt],
    start: Complex64,
    precision: u32,
    w: u32,
) -> Result<(BigInt, BigInt)> {
    if !start.re.is_finite() || !start.im.is_finite() {
        return Err(Error::NoConvergence);
    }
    let mut zre = f64_to_fixed(start.re, w)?;
    let mut zim = f64_to_fixed(start.im, w)?;
    // stop when |step|^2 <= 2^(-2(precision+6)) * max(|z|^2, 2^-40)
    let tol_shift = 2 * (precision as i64 + 6);
    let floor2: BigInt = BigInt::one() << ((2 * w as i64 - 40).max(1) as usize);
    // multiple roots never reach the step tolerance (the evaluation noise
    // floor scales like the m-th root of the working precision), so a
    // plateau hands the current iterate to the expansion check instead of
    // failing here
    let mut best_step2: Option<BigInt> = None;
    let mut stagnant = 0u32;
    for _ in 0..400 {
        let (fre, fim) = eval_fixed(coeffs, &zre, &zim, w);
        if fre.is_zero() && fim.is_zero() {
            return Ok((zre, zim));
        }
        let (dre, dim) = eval_fixed(deriv, &zre, &zim, w);
        let den = &dre * &dre + &dim * &dim; // scale 2^(2w)
        if den.is_zero() {
            zre += BigInt::one() << ((w / 2) as usize);
            continue;
        }
        // step = f * conj(f') / |f'|^2, rescaled to 2^w
        let qre = (&fre * &dre + &fim * &dim) << (w as usize);
        let qim = (&fim * &dre - &fre * &dim) << (w as usize);
        let sre = qre / &den;
        let sim = qim / &den;
        zre -= &sre;
        zim -= &sim;
        let step2 = &sre * &sre + &sim * &sim;
        let scale2 = (&zre * &zre + &zim * &zim).max(floor2.clone());
        // step2 <= scale2 * 2^(-tol_shift)
        if &step2 << (tol_shift as usize) <= scale2 {
            return Ok((zre, zim));
        }
        match &best_step2 {
            Some(best) if &step2 >= best => {
                stagnant += 1;
                if stagnant > 12 {
                    return Ok((zre, zim));
                }
            }
            _ => {
                best_step2 = Some(step2);
                stagnant = 0;
            }
        }
    }
    Ok((zre, zim))
}

fn f64_to_fixed(x: f64, w: u32) -> Result<BigInt> {
    let r = BigRational::from_float(x).ok_or(Error::NoConvergence)?;
    Ok((r.numer() << (w as usize)).div_floor(r.denom()))
}

/// Exact expansion check in scaled integers: with roots at scale `2^w`,
/// the degree-`n` product has exact coefficients at scale `2^(w n)`, and
/// the comparison against the integer coefficients multiplies through by
/// the scale instead of reducing any fractions.
fn verify_expansion(
    ints: &[BigInt],
    roots: &[(BigInt, BigInt)],
    precision: u32,
    w: u32,
) -> Result<()> {
    let n = roots.len();
    let mut cre: Vec<BigInt> = vec![BigInt::zero(); n + 1];
    let mut cim: Vec<BigInt> = vec![BigInt::zero(); n + 1];
    cre[0] = BigInt::one();
    let mut len = 1;
    for (zre, zim) in roots {
        // scale bump: after t factors coefficients sit at scale 2^(w t)
        cre[len] = &cre[len - 1] << (w as usize);
        cim[len] = &cim[len - 1] << (w as usize);
        for k in (1..len).rev() {
            let mre = &cre[k] * zre - &cim[k] * zim;
            let mim = &cre[k] * zim + &cim[k] * zre;
            cre[k] = (&cre[k - 1] << (w as usize)) - mre;
            cim[k] = (&cim[k - 1] << (w as usize)) - mim;
        }
        let mre = &cre[0] * zre - &cim[0] * zim;
        let mim = &cre[0] * zim + &cim[0] * zre;
        cre[0] = -mre;
        cim[0] = -mim;
        len += 1;
    }
    // want |a_n * c_k - a_k * 2^(w n)| + |a_n * cim_k| <= max|a| * 2^(w n - p/2)
    let leading = &ints[n];
    let max_abs = ints.iter().map(|c| c.abs()).max().unwrap();
    let half = (precision / 2) as usize;
    let scale_bits = w as usize * n;
    let tol = (max_abs << scale_bits) >> half;
    for k in 0..=n {
        let err = (leading * &cre[k] - (&ints[k] << scale_bits)).abs() + (leading * &cim[k]).abs();
        if err > tol {
            return Err(Error::NoConvergence);
        }
    }
    Ok(())
}

// ---- f64 Aberth iteration ------------------------------------------------

fn big_to_f64(c: &BigInt, downshift: i64) -> f64 {
    if c.is_zero() {
        return 0.0;
    }
    let bits = c.bits() as i64;
    // take the top 53 bits and track the exponent explicitly
    let drop = (bits - 53).max(0);
    let top = c >> (drop as usize);
    let top = top.to_f64().unwrap_or(0.0);
    top * exp2i(drop - downshift)
}

fn exp2i(e: i64) -> f64 {
    // split to stay inside f64's exponent range during construction
    let half = e / 2;
    (2.0f64).powi(half as i32) * (2.0f64).powi((e - half) as i32)
}

fn aberth(ints: &[BigInt], attempt: usize) -> Result<Vec<Complex64>> {
    let n = ints.len() - 1;
    // center the coefficient magnitudes so the f64 conversion cannot
    // overflow or flush to zero
    let finite: Vec<i64> = ints
        .iter()
        .filter(|c| !c.is_zero())
        .map(|c| c.bits() as i64)
        .collect();
    let center = (finite.iter().max().unwrap() + finite.iter().min().unwrap()) / 2;
    let spread = finite.iter().max().unwrap() - finite.iter().min().unwrap();
    if spread > 1900 {
        return Err(Error::NoConvergence);
    }
    let coeffs: Vec<f64> = ints.iter().map(|c| big_to_f64(c, center)).collect();
    if coeffs.iter().any(|c| !c.is_finite()) {
        return Err(Error::NoConvergence);
    }
    let deriv: Vec<f64> = coeffs
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| c * i as f64)
        .collect();

    let mut z = initial_guesses(&coeffs, n, attempt);
    aberth_iterate(&coeffs, &deriv, &mut z)?;
    Ok(z)
}

fn initial_guesses(coeffs: &[f64], n: usize, attempt: usize) -> Vec<Complex64> {
    let an = coeffs[n].abs();
    let cauchy = 1.0
        + coeffs[..n]
            .iter()
            .map(|c| (c / an).abs())
            .fold(0.0f64, f64::max);
    let radius = cauchy.min(1e100).max(1e-3) * 0.7;
    let offset = 0.43 + 0.71 * attempt as f64;
    (0..n)
        .map(|k| {
            Complex64::from_polar(
                radius * (0.5 + 0.5 * (k as f64 + 1.0) / n as f64),
                2.0 * std::f64::consts::PI * k as f64 / n as f64 + offset,
            )
        })
        .collect()
}

fn horner(coeffs: &[f64], z: Complex64) -> Complex64 {
    coeffs
        .iter()
        .rev()
        .fold(Complex64::new(0.0, 0.0), |acc, &c| acc * z + c)
}

/// Gauss–Seidel Aberth sweep. Stops on convergence or stagnation; the
/// Newton polish and the expansion check decide whether the accuracy
/// reached suffices (multiple roots converge only linearly here).
fn aberth_iterate(coeffs: &[f64], deriv: &[f64], z: &mut [Complex64]) -> Result<()> {
    let n = z.len();
    let mut best = f64::INFINITY;
    let mut stagnant = 0u32;
    for _ in 0..500 {
        let mut max_rel = 0.0f64;
        for k in 0..n {
            let p = horner(coeffs, z[k]);
            let d = horner(deriv, z[k]);
            let newton = if d.norm_sqr() > 0.0 { p / d } else { p };
            let mut s = Complex64::new(0.0, 0.0);
            for j in 0..n {
                if j != k {
                    let diff = z[k] - z[j];
                    if diff.norm_sqr() > 1e-280 {
                        s += diff.inv();
                    }
                }
            }
            let denom = Complex64::new(1.0, 0.0) - newton * s;
            let w = if denom.norm_sqr() > 0.0 {
                newton / denom
            } else {
                newton
            };
            if !w.re.is_finite() || !w.im.is_finite() {
                return Err(Error::NoConvergence);
            }
            z[k] -= w;
            let rel = w.norm() / (1.0 + z[k].norm());
            max_rel = max_rel.max(rel);
        }
        if max_rel < 1e-13 {
            return Ok(());
        }
        if max_rel < best * 0.5 {
            best = max_rel;
            stagnant = 0;
        } else {
            stagnant += 1;
            // multiple roots plateau around sqrt(eps); hand over early
            if stagnant > 30 && max_rel < 1e-5 {
                return Ok(());
            }
        }
    }
    if best < 1e-3 {
        return Ok(());
    }
    Err(Error::NoConvergence)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::parse_rational;

    fn p(text: &str) -> Polynomial {
        Polynomial::parse(text).unwrap()
    }

    fn sorted_f64(roots: &[ComplexRoot]) -> Vec<(f64, f64)> {
        let mut v: Vec<(f64, f64)> = roots.iter().map(|r| r.to_f64()).collect();
        v.sort_by(|a, b| a.partial_cmp(b).unwrap());
        v
    }

    #[test]
    fn linear_root_is_exact() {
        let roots = roots_oracle(&p("1 1"), 64).unwrap();
        assert_eq!(roots.len(), 1);
        assert_eq!(roots[0].re, parse_rational("-1").unwrap());
        assert!(roots[0].im.is_zero());
    }

    #[test]
    fn factored_cubic_yields_boundary_pair() {
        // (s+1)(s^2+1): roots -1, i, -i
        let roots = roots_oracle(&p("1 1 1 1"), 64).unwrap();
        let got = sorted_f64(&roots);
        for w in [(-1.0, 0.0), (0.0, -1.0), (0.0, 1.0)] {
            assert!(
                got.iter()
                    .any(|g| (g.0 - w.0).abs() < 1e-15 && (g.1 - w.1).abs() < 1e-15),
                "no root near {w:?} in {got:?}"
            );
        }
    }

    #[test]
    fn stable_cubic_has_negative_real_parts() {
        let roots = roots_oracle(&p("10 7 3 1"), 64).unwrap();
        assert_eq!(roots.len(), 3);
        let max_re = max_real_part(&roots).unwrap();
        assert!(max_re.is_negative());
    }

    #[test]
    fn origin_roots_are_detected_exactly() {
        // s^2 (s + 2)
        let roots = roots_oracle(&p("0 0 2 1"), 64).unwrap();
        assert_eq!(roots.len(), 3);
        assert!(roots[0].re.is_zero() && roots[0].im.is_zero());
        assert!(roots[1].re.is_zero() && roots[1].im.is_zero());
        let (re, im) = roots[2].to_f64();
        assert!((re + 2.0).abs() < 1e-15 && im.abs() < 1e-15);
    }

    #[test]
    fn double_roots_still_pass_the_expansion_check() {
        // (s+1)^2 (s+2) = s^3 + 4 s^2 + 5 s + 2
        let roots = roots_oracle(&p("2 5 4 1"), 64).unwrap();
        let got = sorted_f64(&roots);
        assert!((got[0].0 + 2.0).abs() < 1e-9);
        assert!((got[1].0 + 1.0).abs() < 1e-6);
        assert!((got[2].0 + 1.0).abs() < 1e-6);
    }

    #[test]
    fn high_precision_roots_tighten_the_expansion() {
        let f = p("17160 12075/8 6026 1583/4 791 69/2 46 1 1");
        for bits in [64, 128] {
            let roots = roots_oracle(&f, bits).unwrap();
            assert_eq!(roots.len(), 8);
            // contract: the expansion check inside the oracle passed
            assert!(max_real_part(&roots).unwrap().is_negative());
        }
    }

    #[test]
    fn expansion_reproduces_coefficients() {
        let f = p("6 11 6 1"); // (s+1)(s+2)(s+3)
        let roots = roots_oracle(&f, 96).unwrap();
        let expanded = expand_from_roots(&roots, &f.coeff(3));
        for (k, c) in f.coeffs().iter().enumerate() {
            let err = (&expanded[k].0 - c).abs() + expanded[k].1.abs();
            assert!(err < parse_rational("1/1000000000000").unwrap());
        }
    }

    #[test]
    fn repeated_quadratic_factors_converge() {
        // (s^2 + s + 1)^2: a conjugate pair of double roots
        let f = p("1 2 3 2 1");
        let roots = roots_oracle(&f, 64).unwrap();
        assert_eq!(roots.len(), 4);
        for r in &roots {
            let (re, im) = r.to_f64();
            assert!((re + 0.5).abs() < 1e-6);
            assert!((im.abs() - 0.75f64.sqrt()).abs() < 1e-6);
        }
    }
}
