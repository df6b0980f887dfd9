//! Deterministic samplers for the property campaign.
//!
//! Stable polynomials are built as exact products of factors `(s + r)` and
//! `(s² + 2ζω s + ω²)` with positive rational parameters, so membership in
//! the stable class holds by construction at every degree (naive
//! coefficient sampling almost never lands there for degree 6 and up).
//! Ratio-constrained samplers drive the recurrence
//! `a_{i+1} = λ_i a_i a_{i-1} / a_{i-2}` with the target ratios chosen
//! below the requested bound.
//!
//! All randomness comes from a local splitmix generator keyed by a seed,
//! so samples are reproducible across platforms and releases.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Zero};
use polystab::Polynomial;

/// Splitmix64: tiny, seedable, platform-independent.
#[derive(Clone, Debug)]
pub struct Rng64 {
    state: u64,
}

impl Rng64 {
    pub fn new(seed: u64) -> Self {
        Rng64 { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9e37_79b9_7f4a_7c15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
        z ^ (z >> 31)
    }

    /// Uniform in `0..n`.
    pub fn below(&mut self, n: u64) -> u64 {
        self.next_u64() % n
    }

    /// Uniform in `lo..=hi`.
    pub fn range(&mut self, lo: u64, hi: u64) -> u64 {
        lo + self.below(hi - lo + 1)
    }

    fn small_positive_rational(&mut self) -> BigRational {
        let num = self.range(1, 12) as i64;
        let den = self.range(1, 4) as i64;
        BigRational::new(BigInt::from(num), BigInt::from(den))
    }
}

/// Stable per-trial seed derivation from (campaign seed, property id, trial).
pub fn trial_seed(base: u64, property: &str, trial: u64) -> u64 {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for b in property.bytes() {
        h ^= b as u64;
        h = h.wrapping_mul(0x0000_0100_0000_01b3);
    }
    h ^ base.rotate_left(17) ^ trial.wrapping_mul(0x9e37_79b9_7f4a_7c15)
}

fn convolve(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// A stable polynomial of degree exactly `n`, expanded exactly from
/// negative-real-part factors.
pub fn random_stable(n: usize, seed: u64) -> Polynomial {
    assert!(n >= 1);
    let mut rng = Rng64::new(seed ^ (n as u64).wrapping_mul(0xd134_2543_de82_ef95));
    let mut coeffs = vec![BigRational::one()];
    let mut remaining = n;
    while remaining > 0 {
        if remaining == 1 || rng.below(2) == 0 {
            let r = rng.small_positive_rational();
            coeffs = convolve(&coeffs, &[r, BigRational::one()]);
            remaining -= 1;
        } else {
            let zeta = rng.small_positive_rational();
            let omega = rng.small_positive_rational();
            let quad = vec![
                &omega * &omega,
                BigRational::from_integer(BigInt::from(2)) * zeta * &omega,
                BigRational::one(),
            ];
            coeffs = convolve(&coeffs, &quad);
            remaining -= 2;
        }
    }
    Polynomial::new(coeffs).expect("product of positive factors")
}

/// A positive polynomial of degree `n` with unconstrained ratios; usually
/// far from stable once the degree grows.
pub fn random_positive(n: usize, seed: u64) -> Polynomial {
    let mut rng = Rng64::new(seed ^ 0x8f0c_7569_cdb2_11e3);
    let coeffs = (0..=n).map(|_| rng.small_positive_rational()).collect();
    Polynomial::new(coeffs).expect("positive coefficients")
}

/// A positive polynomial of degree `n ≥ 3` whose ratios `λ_i` are all
/// strictly below `bound` (each is a random fraction of it).
pub fn random_ratio_bounded(n: usize, seed: u64, bound: &BigRational) -> Polynomial {
    assert!(n >= 3);
    let mut rng = Rng64::new(seed ^ 0x243f_6a88_85a3_08d3);
    let mut coeffs: Vec<BigRational> = (0..3).map(|_| rng.small_positive_rational()).collect();
    for i in 2..n {
        let num = rng.range(1, 15) as i64;
        let lambda = bound * BigRational::new(BigInt::from(num), BigInt::from(16));
        let next = &lambda * &coeffs[i] * &coeffs[i - 1] / &coeffs[i - 2];
        coeffs.push(next);
    }
    Polynomial::new(coeffs).expect("recurrence keeps coefficients positive")
}

/// A positive polynomial of degree `n ≥ 3` with `Σ λ_i < 1`.
pub fn random_ratio_sum_bounded(n: usize, seed: u64) -> Polynomial {
    assert!(n >= 3);
    let mut rng = Rng64::new(seed ^ 0x4528_21e6_38d0_1377);
    // split a total strictly below one across the n-2 ratios
    let total = BigRational::new(BigInt::from(rng.range(4, 15) as i64), BigInt::from(16));
    let weights: Vec<u64> = (0..n - 2).map(|_| rng.range(1, 16)).collect();
    let weight_sum: u64 = weights.iter().sum();
    let mut coeffs: Vec<BigRational> = (0..3).map(|_| rng.small_positive_rational()).collect();
    for i in 2..n {
        let lambda = &total
            * BigRational::new(BigInt::from(weights[i - 2] as i64), BigInt::from(weight_sum as i64));
        let next = &lambda * &coeffs[i] * &coeffs[i - 1] / &coeffs[i - 2];
        coeffs.push(next);
    }
    Polynomial::new(coeffs).expect("recurrence keeps coefficients positive")
}
