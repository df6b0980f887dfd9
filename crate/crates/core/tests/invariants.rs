//! Property tests for the coefficientwise algebra and the exact
//! stability machinery.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::One;
use proptest::prelude::*;

use polystab::{is_hurwitz_stable, leading_principal_minors, Polynomial};

fn rational() -> impl Strategy<Value = BigRational> {
    (1i64..=400, 1i64..=40)
        .prop_map(|(n, d)| BigRational::new(BigInt::from(n), BigInt::from(d)))
}

fn positive_poly(min_len: usize, max_len: usize) -> impl Strategy<Value = Polynomial> {
    prop::collection::vec(rational(), min_len..=max_len)
        .prop_map(|coeffs| Polynomial::new(coeffs).unwrap())
}

/// Exact convolution, used to assemble stable polynomials from factors.
fn mul(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let mut out = vec![BigRational::from_integer(BigInt::from(0)); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn stable_poly(max_factors: usize) -> impl Strategy<Value = Polynomial> {
    let linear = rational().prop_map(|r| vec![r, BigRational::one()]);
    let quadratic = (rational(), rational()).prop_map(|(zeta, omega)| {
        vec![
            &omega * &omega,
            BigRational::from_integer(BigInt::from(2)) * zeta * omega,
            BigRational::one(),
        ]
    });
    let factor = prop_oneof![linear, quadratic];
    prop::collection::vec(factor, 1..=max_factors).prop_map(|factors| {
        let coeffs = factors
            .iter()
            .skip(1)
            .fold(factors[0].clone(), |acc, f| mul(&acc, f));
        Polynomial::new(coeffs).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn reversal_is_an_involution(f in positive_poly(1, 10)) {
        prop_assert_eq!(f.reversal().reversal(), f);
    }

    #[test]
    fn windows_slice_coefficients_exactly(f in positive_poly(2, 10), m in 1usize..9) {
        prop_assume!(m <= f.degree());
        let windows = f.windows(m).unwrap();
        prop_assert_eq!(windows.len(), f.degree() - m + 1);
        for (j, w) in windows.iter().enumerate() {
            prop_assert_eq!(w.degree(), m);
            for (k, c) in w.coeffs().iter().enumerate() {
                prop_assert_eq!(c, &f.coeff(j + k));
            }
        }
    }

    #[test]
    fn generalized_product_endpoints_factor_through_reversal(
        f in positive_poly(2, 9),
        g in positive_poly(2, 9),
    ) {
        let (f, g) = if f.degree() >= g.degree() { (f, g) } else { (g, f) };
        prop_assume!(g.degree() >= 1);
        let prod = f.generalized_hadamard(&g).unwrap();
        let first = prod.elements().first().unwrap();
        let last = prod.elements().last().unwrap();
        prop_assert_eq!(first, &f.hadamard_product(&g).unwrap());
        let via_reversal = f
            .reversal()
            .hadamard_product(&g.reversal())
            .unwrap()
            .reversal();
        prop_assert_eq!(last, &via_reversal);
    }

    #[test]
    fn hadamard_product_commutes_and_associates_at_equal_degree(
        base in prop::collection::vec((rational(), rational(), rational()), 2..8),
    ) {
        let f = Polynomial::new(base.iter().map(|t| t.0.clone()).collect()).unwrap();
        let g = Polynomial::new(base.iter().map(|t| t.1.clone()).collect()).unwrap();
        let h = Polynomial::new(base.iter().map(|t| t.2.clone()).collect()).unwrap();
        let fg = f.hadamard_product(&g).unwrap();
        let gf = g.hadamard_product(&f).unwrap();
        prop_assert_eq!(&fg, &gf);
        let left = fg.hadamard_product(&h).unwrap();
        let right = f.hadamard_product(&g.hadamard_product(&h).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn ratio_multiplicativity_is_exact(
        f in positive_poly(4, 10),
        g in positive_poly(4, 10),
    ) {
        let (f, g) = if f.degree() >= g.degree() { (f, g) } else { (g, f) };
        let m = g.degree();
        prop_assume!(m >= 3);
        let lf = f.lambdas().unwrap();
        let lg = g.lambdas().unwrap();
        let prod = f.generalized_hadamard(&g).unwrap();
        for (j, element) in prod.elements().iter().enumerate() {
            let le = element.lambdas().unwrap();
            for i in 2..=m - 1 {
                let expected = lf.get(i + j).unwrap() * lg.get(i).unwrap();
                prop_assert_eq!(le.get(i).unwrap(), &expected);
            }
        }
    }

    #[test]
    fn integer_power_addition_law(f in positive_poly(1, 8), p in 1u32..4, q in 1u32..4) {
        let bp = BigRational::from_integer(BigInt::from(p));
        let bq = BigRational::from_integer(BigInt::from(q));
        let bpq = BigRational::from_integer(BigInt::from(p + q));
        let lhs = f.hadamard_power(&bpq, 128).unwrap();
        let rhs = f
            .hadamard_power(&bp, 128)
            .unwrap()
            .hadamard_product(&f.hadamard_power(&bq, 128).unwrap())
            .unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn terminal_minor_identity(f in positive_poly(3, 10)) {
        let minors = leading_principal_minors(&f).unwrap();
        let n = f.degree();
        prop_assert_eq!(&minors[n - 1], &(f.coeff(0) * &minors[n - 2]));
    }

    #[test]
    fn text_format_round_trips(f in positive_poly(1, 10)) {
        prop_assert_eq!(Polynomial::parse(&f.to_text()).unwrap(), f);
    }

    #[test]
    fn constructed_stable_polynomials_pass_the_criterion(f in stable_poly(4)) {
        prop_assert!(is_hurwitz_stable(&f).unwrap());
        // reversal preserves stability
        prop_assert!(is_hurwitz_stable(&f.reversal()).unwrap());
        // stability forces every ratio below one
        if f.degree() >= 3 {
            let lambdas = f.lambdas().unwrap();
            prop_assert!(lambdas.max() < &BigRational::one());
        }
    }

    #[test]
    fn hadamard_products_of_stable_factors_stay_stable(
        f in stable_poly(4),
        g in stable_poly(4),
    ) {
        let (f, g) = if f.degree() >= g.degree() { (f, g) } else { (g, f) };
        let fg = f.hadamard_product(&g).unwrap();
        prop_assert!(is_hurwitz_stable(&fg).unwrap());
    }

    #[test]
    fn minors_scale_like_degree_of_homogeneity(f in positive_poly(2, 8), c in 1i64..6) {
        // scaling every coefficient by c multiplies Δ_k by c^k
        let c = BigRational::from_integer(BigInt::from(c));
        let scaled = Polynomial::new(f.coeffs().iter().map(|a| a * &c).collect()).unwrap();
        let base = leading_principal_minors(&f).unwrap();
        let scaled_minors = leading_principal_minors(&scaled).unwrap();
        let mut factor = BigRational::one();
        for (b, s) in base.iter().zip(scaled_minors.iter()) {
            factor *= &c;
            prop_assert_eq!(&(b * &factor), s);
        }
    }
}
