//! The Hurwitz matrix, its leading principal minors, and the
//! Routh–Hurwitz stability decision.
//!
//! Minors are computed exactly: the rational matrix is scaled to integers
//! by the common denominator of the coefficients and eliminated with the
//! fraction-free (Bareiss) scheme, which reads off every leading principal
//! minor in one pass. A zero pivot ends the fast pass; the remaining
//! minors are then computed independently with row-pivoted fraction-free
//! elimination, so zero or negative intermediate minors are handled.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{Integer, One, Signed, Zero};

use crate::error::{Error, Result};
use crate::poly::Polynomial;

/// The `n x n` Hurwitz matrix of a degree-`n` polynomial.
///
/// Entry `(i, j)` (1-indexed) is `a_{n-2i+j}`, with `a_k = 0` outside
/// `0..=n`; the first row starts `a_{n-1}, a_n` and the bottom-right
/// entry is `a_0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HurwitzMatrix {
    size: usize,
    rows: Vec<Vec<BigRational>>,
}

impl HurwitzMatrix {
    pub fn new(f: &Polynomial) -> Result<Self> {
        let n = f.degree();
        if n == 0 {
            return Err(Error::DegreeZero);
        }
        let coeff = |k: i64| -> BigRational {
            if k < 0 || k > n as i64 {
                BigRational::zero()
            } else {
                f.coeff(k as usize)
            }
        };
        let rows = (1..=n as i64)
            .map(|i| (1..=n as i64).map(|j| coeff(n as i64 - 2 * i + j)).collect())
            .collect();
        Ok(HurwitzMatrix { size: n, rows })
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn rows(&self) -> &[Vec<BigRational>] {
        &self.rows
    }

    /// Entry at 1-indexed position `(i, j)`.
    pub fn entry(&self, i: usize, j: usize) -> &BigRational {
        &self.rows[i - 1][j - 1]
    }
}

/// Construct the Hurwitz matrix of `f`.
pub fn hurwitz_matrix(f: &Polynomial) -> Result<HurwitzMatrix> {
    HurwitzMatrix::new(f)
}

/// The exact leading principal minors `Δ_1 ..= Δ_n` of the Hurwitz matrix.
///
/// Always satisfies `Δ_n = a_0 Δ_{n-1}`.
pub fn leading_principal_minors(f: &Polynomial) -> Result<Vec<BigRational>> {
    let n = f.degree();
    if n == 0 {
        return Err(Error::DegreeZero);
    }
    let (scale, int_matrix) = integer_hurwitz(f);
    let int_minors = integer_minors(&int_matrix);
    // the k x k leading submatrix was scaled by `scale` entrywise, so its
    // determinant picked up a factor scale^k
    let mut factor = BigInt::one();
    Ok(int_minors
        .into_iter()
        .map(|m| {
            factor = &factor * &scale;
            BigRational::new(m, factor.clone())
        })
        .collect())
}

/// The Routh–Hurwitz criterion, decided exactly.
///
/// True iff all coefficients share a sign (all-negative inputs are
/// negated first) and `Δ_i > 0` for `i = 1 ..= n-1`.
pub fn is_hurwitz_stable(f: &Polynomial) -> Result<bool> {
    let n = f.degree();
    if n == 0 {
        return Err(Error::DegreeZero);
    }
    let normalized = if f.coeffs().iter().all(|c| c.is_negative()) {
        Polynomial::new(f.coeffs().iter().map(|c| -c).collect())?
    } else {
        f.clone()
    };
    if !normalized.is_positive() {
        return Ok(false);
    }
    let minors = leading_principal_minors(&normalized)?;
    Ok(minors[..n - 1].iter().all(|d| d.is_positive()))
}

/// Scale the Hurwitz matrix of `f` to integers; returns the common
/// denominator used and the integer matrix.
fn integer_hurwitz(f: &Polynomial) -> (BigInt, Vec<Vec<BigInt>>) {
    let n = f.degree();
    let scale = f
        .coeffs()
        .iter()
        .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let int_coeff = |k: i64| -> BigInt {
        if k < 0 || k > n as i64 {
            BigInt::zero()
        } else {
            let c = f.coeff(k as usize);
            c.numer() * (&scale / c.denom())
        }
    };
    let rows = (1..=n as i64)
        .map(|i| {
            (1..=n as i64)
                .map(|j| int_coeff(n as i64 - 2 * i + j))
                .collect()
        })
        .collect();
    (scale, rows)
}

/// All leading principal minors of an integer matrix.
///
/// Single-pass Bareiss elimination while the pivots stay nonzero; after a
/// zero pivot the remaining minors come from independent determinants.
fn integer_minors(matrix: &[Vec<BigInt>]) -> Vec<BigInt> {
    let n = matrix.len();
    let mut minors = vec![BigInt::zero(); n];
    let mut work: Vec<Vec<BigInt>> = matrix.to_vec();
    minors[0] = work[0][0].clone();
    let mut prev = BigInt::one();
    let mut stalled_at = None;
    for k in 0..n.saturating_sub(1) {
        let pivot = work[k][k].clone();
        if pivot.is_zero() {
            stalled_at = Some(k + 1);
            break;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let t = &work[i][j] * &pivot - &work[i][k] * &work[k][j];
                debug_assert!((&t % &prev).is_zero());
                work[i][j] = t / &prev;
            }
        }
        prev = pivot;
        minors[k + 1] = work[k + 1][k + 1].clone();
    }
    if let Some(start) = stalled_at {
        for (idx, minor) in minors.iter_mut().enumerate().skip(start) {
            *minor = integer_determinant(matrix, idx + 1);
        }
    }
    minors
}

/// Determinant of the leading `size x size` submatrix, fraction-free with
/// row pivoting.
fn integer_determinant(matrix: &[Vec<BigInt>], size: usize) -> BigInt {
    let mut m: Vec<Vec<BigInt>> = matrix[..size]
        .iter()
        .map(|row| row[..size].to_vec())
        .collect();
    let mut negate = false;
    let mut prev = BigInt::one();
    for k in 0..size.saturating_sub(1) {
        if m[k][k].is_zero() {
            match (k + 1..size).find(|&r| !m[r][k].is_zero()) {
                Some(r) => {
                    m.swap(k, r);
                    negate = !negate;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..size {
            for j in k + 1..size {
                let t = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                debug_assert!((&t % &prev).is_zero());
                m[i][j] = t / &prev;
            }
            m[i][k] = BigInt::zero();
        }
        prev = m[k][k].clone();
    }
    let det = m[size - 1][size - 1].clone();
    if negate {
        -det
    } else {
        det
    }
}
