//! The property-test campaign.
//!
//! Each property draws its own polynomials from the deterministic
//! samplers, keyed by (campaign seed, property id, trial index), so runs
//! with the same seed produce byte-identical reports and any failure can
//! be replayed from the polynomial text dumped into the report.

use std::collections::BTreeMap;
use std::cmp::Ordering;

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, ToPrimitive};

use polystab::rational::{format_rational, parse_rational};
use polystab::report::default_tolerance;
use polystab::{
    certified_constant, extend_stable, is_below, is_hurwitz_stable, is_quasi_stable,
    lambda_uniform, leading_principal_minors, p_star, prepend_stable, roots_oracle, stabilize,
    stabilize_factorized, ConstantKind, Polynomial, Verdict, DEFAULT_ROOT_PRECISION,
};

use crate::sampler::{
    random_positive, random_ratio_bounded, random_ratio_sum_bounded, random_stable, trial_seed,
    Rng64,
};

/// Campaign parameters.
#[derive(Clone, Debug)]
pub struct CampaignConfig {
    pub degree_lo: usize,
    pub degree_hi: usize,
    pub trials: u64,
    pub seed: u64,
    pub quasi_tolerance: BigRational,
}

impl Default for CampaignConfig {
    fn default() -> Self {
        CampaignConfig {
            degree_lo: 1,
            degree_hi: 10,
            trials: 200,
            seed: 0x5eed_2024,
            quasi_tolerance: default_tolerance(),
        }
    }
}

impl CampaignConfig {
    pub fn validate(&self) -> Result<(), String> {
        if self.trials < 1 {
            return Err("trials must be at least 1".into());
        }
        if self.degree_lo < 1 || self.degree_hi > 12 || self.degree_lo > self.degree_hi {
            return Err("degrees must satisfy 1 <= lo <= hi <= 12".into());
        }
        Ok(())
    }
}

/// A failed trial: what went wrong and the polynomials to replay it.
#[derive(Clone, Debug)]
pub struct Failure {
    pub trial: u64,
    pub message: String,
    pub polynomials: BTreeMap<String, String>,
}

#[derive(Clone, Debug)]
pub struct PropertyReport {
    pub id: &'static str,
    pub trials: u64,
    pub failures: Vec<Failure>,
    pub counters: BTreeMap<String, u64>,
    /// Set when the configured degree range cannot exercise the property.
    pub skipped: bool,
}

impl PropertyReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

#[derive(Debug)]
pub struct CampaignReport {
    pub config: CampaignConfig,
    pub properties: Vec<PropertyReport>,
}

impl CampaignReport {
    pub fn all_passed(&self) -> bool {
        self.properties.iter().all(|p| p.passed())
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "config": {
                "degrees": [self.config.degree_lo, self.config.degree_hi],
                "trials": self.config.trials,
                "seed": self.config.seed,
                "quasi_tolerance": format_rational(&self.config.quasi_tolerance),
            },
            "properties": self.properties.iter().map(|p| serde_json::json!({
                "id": p.id,
                "trials": p.trials,
                "skipped": p.skipped,
                "passed": p.passed(),
                "counters": p.counters,
                "failures": p.failures.iter().map(|f| serde_json::json!({
                    "trial": f.trial,
                    "message": f.message,
                    "polynomials": f.polynomials,
                })).collect::<Vec<_>>(),
            })).collect::<Vec<_>>(),
            "all_passed": self.all_passed(),
        })
    }
}

struct Trial<'a> {
    rng: Rng64,
    index: u64,
    config: &'a CampaignConfig,
    counters: &'a mut BTreeMap<String, u64>,
}

impl Trial<'_> {
    fn seed(&mut self) -> u64 {
        self.rng.next_u64()
    }

    fn degree(&mut self, min: usize) -> usize {
        let lo = self.config.degree_lo.max(min);
        let hi = self.config.degree_hi;
        self.rng.range(lo as u64, hi as u64) as usize
    }

    fn degree_between(&mut self, min: usize, max: usize) -> usize {
        self.rng.range(min as u64, max as u64) as usize
    }

    fn bump(&mut self, key: &str) {
        *self.counters.entry(key.to_string()).or_insert(0) += 1;
    }

    fn fail(
        &self,
        message: impl Into<String>,
        polys: &[(&str, &Polynomial)],
    ) -> Result<(), Failure> {
        Err(Failure {
            trial: self.index,
            message: message.into(),
            polynomials: polys
                .iter()
                .map(|(k, p)| (k.to_string(), p.to_text()))
                .collect(),
        })
    }
}

type PropertyFn = fn(&mut Trial) -> Result<(), Failure>;

struct Property {
    id: &'static str,
    /// Smallest degree ceiling the property needs to run at all.
    min_degree_hi: usize,
    run: PropertyFn,
}

fn err_to_failure(trial: &Trial, context: &str, e: polystab::Error) -> Failure {
    Failure {
        trial: trial.index,
        message: format!("{context}: {e}"),
        polynomials: BTreeMap::new(),
    }
}

// ---- individual properties -------------------------------------------

fn prop_hadamard_stable_closure(t: &mut Trial) -> Result<(), Failure> {
    let n = t.degree(1);
    let m = t.degree_between(1, n);
    let f = random_stable(n, t.seed());
    let g = random_stable(m, t.seed());
    let product = f
        .hadamard_product(&g)
        .map_err(|e| err_to_failure(t, "product", e))?;
    if !is_hurwitz_stable(&product).map_err(|e| err_to_failure(t, "criterion", e))? {
        return t.fail("product of stable polynomials not stable", &[("f", &f), ("g", &g)]);
    }
    Ok(())
}

fn prop_low_degree_product_stability(t: &mut Trial) -> Result<(), Failure> {
    let n = t.degree(3);
    let m = t.degree_between(1, n.min(4));
    // ratio-bounded f need not be stable; g must be
    let f = random_ratio_bounded(n, t.seed(), &BigRational::one());
    let g = random_stable(m, t.seed());
    let product = f
        .generalized_hadamard(&g)
        .map_err(|e| err_to_failure(t, "generalized product", e))?;
    for element in product.elements() {
        if !is_hurwitz_stable(element).map_err(|e| err_to_failure(t, "criterion", e))? {
            return t.fail(
                format!("element {} not stable at window size {m}", element.to_text()),
                &[("f", &f), ("g", &g)],
            );
        }
    }
    Ok(())
}

fn prop_endpoint_elements_stable(t: &mut Trial) -> Result<(), Failure> {
    let n = t.degree(1);
    let m = t.degree_between(1, n);
    let f = random_stable(n, t.seed());
    let g = random_stable(m, t.seed());
    let product = f
        .generalized_hadamard(&g)
        .map_err(|e| err_to_failure(t, "generalized product", e))?;
    let first = product.elements().first().unwrap();
    let last = product.elements().last().unwrap();
    for (label, element) in [("first", first), ("last", last)] {
        if !is_hurwitz_stable(element).map_err(|e| err_to_failure(t, "criterion", e))? {
            return t.fail(format!("{label} element not stable"), &[("f", &f), ("g", &g)]);
        }
    }
    // the last element factors through the reversal identity
    let via_reversal = f
        .reversal()
        .hadamard_product(&g.reversal())
        .and_then(|p| Ok(p.reversal()))
        .map_err(|e| err_to_failure(t, "reversal route", e))?;
    if last != &via_reversal {
        return t.fail("last element disagrees with reversal identity", &[("f", &f), ("g", &g)]);
    }
    Ok(())
}

fn prop_interior_elements_quasi_stable(t: &mut Trial) -> Result<(), Failure> {
    let n = t.degree(1);
    let m = t.degree_between(1, n);
    let f = random_stable(n, t.seed());
    let g = random_stable(m, t.seed());
    let tolerance = t.config.quasi_tolerance.clone();
    let product = f
        .generalized_hadamard(&g)
        .map_err(|e| err_to_failure(t, "generalized product", e))?;
    for element in product.elements() {
        let verdict = is_quasi_stable(element, &tolerance)
            .map_err(|e| err_to_failure(t, "quasi verdict", e))?;
        if verdict == Verdict::Unstable {
            return t.fail(
                format!("element {} unstable", element.to_text()),
                &[("f", &f), ("g", &g)],
            );
        }
        if verdict == Verdict::QuasiStable {
            t.bump("boundary_sightings");
        }
    }
    Ok(())
}

fn prop_factorable_g_product_stability(t: &mut Trial) -> Result<(), Failure> {
    let n = t.degree(1);
    let m = t.degree_between(1, n);
    let f = random_stable(n, t.seed());
    let g1 = random_stable(m, t.seed());
    let g2 = random_stable(m, t.seed());
    let g = g1
        .hadamard_product(&g2)
        .map_err(|e| err_to_failure(t, "factor product", e))?;
    let product = f
        .generalized_hadamard(&g)
        .map_err(|e| err_to_failure(t, "generalized product", e))?;
    for element in product.elements() {
        if !is_hurwitz_stable(element).map_err(|e| err_to_failure(t, "criterion", e))? {
            return t.fail(
                format!("element {} not stable", element.to_text()),
                &[("f", &f), ("g1", &g1), ("g2", &g2)],
            );
        }
    }
    Ok(())
}

fn prop_ratio_bound_alpha_closure(t: &mut Trial) -> Result<(), Failure> {
    let n = t.degree(3);
    let m = t.degree_between(3, n);
    let alpha = certified_constant(ConstantKind::AlphaStar);
    let f = random_ratio_bounded(n, t.seed(), &BigRational::one());
    let g = random_ratio_bounded(m, t.seed(), &alpha.lo);
    check_elements_below(t, &f, &g, ConstantKind::AlphaStar)
}

fn prop_ratio_bound_beta_to_alpha(t: &mut Trial) -> Result<(), Failure> {
    let n = t.degree(3);
    let m = t.degree_between(3, n);
    let beta = certified_constant(ConstantKind::BetaStar);
    let f = random_ratio_bounded(n, t.seed(), &beta.lo);
    let g = random_ratio_bounded(m, t.seed(), &beta.lo);
    check_elements_below(t, &f, &g, ConstantKind::AlphaStar)
}

fn check_elements_below(
    t: &mut Trial,
    f: &Polynomial,
    g: &Polynomial,
    bound: ConstantKind,
) -> Result<(), Failure> {
    let product = f
        .generalized_hadamard(g)
        .map_err(|e| err_to_failure(t, "generalized product", e))?;
    for element in product.elements() {
        let lambdas = element
            .lambdas()
            .map_err(|e| err_to_failure(t, "ratios", e))?;
        let below =
            is_below(bound, lambdas.max()).map_err(|e| err_to_failure(t, "comparison", e))?;
        if !below {
            return t.fail(
                format!("element ratio {} not below {bound:?}", lambdas.max()),
                &[("f", f), ("g", g)],
            );
        }
    }
    Ok(())
}

fn prop_ratio_sum_closure(t: &mut Trial) -> Result<(), Failure> {
    let n = t.degree(3);
    let m = t.degree_between(3, n);
    let f = random_ratio_bounded(n, t.seed(), &BigRational::one());
    let g = random_ratio_sum_bounded(m, t.seed());
    let g_sum = g.lambdas().map_err(|e| err_to_failure(t, "ratios", e))?.sum();
    let product = f
        .generalized_hadamard(&g)
        .map_err(|e| err_to_failure(t, "generalized product", e))?;
    for element in product.elements() {
        let sum = element
            .lambdas()
            .map_err(|e| err_to_failure(t, "ratios", e))?
            .sum();
        // the exact chain: sum over the element < sum over g < 1
        if sum >= g_sum || sum >= BigRational::one() {
            return t.fail(
                format!("element ratio sum {} breaks the chain", format_rational(&sum)),
                &[("f", &f), ("g", &g)],
            );
        }
    }
    Ok(())
}

fn prop_stabilize_totality(t: &mut Trial) -> Result<(), Failure> {
    let n = t.degree(3);
    let m = t.degree_between(1, n);
    let f = random_positive(n, t.seed());
    let result = stabilize(&f, m).map_err(|e| err_to_failure(t, "stabilize", e))?;
    for element in result.product.elements() {
        if !is_hurwitz_stable(element).map_err(|e| err_to_failure(t, "criterion", e))? {
            return t.fail("stabilize produced an unstable element", &[("f", &f), ("g", &result.g)]);
        }
    }
    Ok(())
}

fn prop_stabilize_factorized_totality(t: &mut Trial) -> Result<(), Failure> {
    let n = t.degree(3);
    let m = t.degree_between(1, n);
    let f = random_ratio_bounded(n, t.seed(), &BigRational::one());
    let result =
        stabilize_factorized(&f, m).map_err(|e| err_to_failure(t, "stabilize_factorized", e))?;
    let factors = match &result.factors {
        Some(fs) => fs,
        None => return t.fail("factorized stabilizer returned no witness", &[("f", &f)]),
    };
    // re-verify the witness from scratch: stable factors, exact product
    let mut acc: Option<Polynomial> = None;
    for factor in factors {
        if !is_hurwitz_stable(factor).map_err(|e| err_to_failure(t, "criterion", e))? {
            return t.fail("witness factor not stable", &[("f", &f), ("factor", factor)]);
        }
        acc = Some(match acc {
            None => factor.clone(),
            Some(prev) => prev
                .hadamard_product(factor)
                .map_err(|e| err_to_failure(t, "witness product", e))?,
        });
    }
    if acc.as_ref() != Some(&result.g) {
        return t.fail("witness product does not equal g", &[("f", &f), ("g", &result.g)]);
    }
    for element in result.product.elements() {
        if !is_hurwitz_stable(element).map_err(|e| err_to_failure(t, "criterion", e))? {
            return t.fail("factorized stabilizer element unstable", &[("f", &f), ("g", &result.g)]);
        }
    }
    Ok(())
}

fn prop_extension_certificates(t: &mut Trial) -> Result<(), Failure> {
    let n = t.degree(1).min(6);
    let f = random_stable(n, t.seed());
    let steps = t.rng.range(1, 3) as usize;
    let eps_choices = ["1", "1/3", "1/17"];
    let epsilon = parse_rational(eps_choices[t.rng.below(3) as usize]).unwrap();
    let cert = extend_stable(&f, n + steps, &epsilon)
        .map_err(|e| err_to_failure(t, "extend_stable", e))?;
    if let Err(e) = cert.verify() {
        return t.fail(format!("certificate failed verification: {e}"), &[("f", &f), ("result", &cert.result)]);
    }
    if cert.step_witnesses.len() != steps {
        return t.fail("wrong number of step witnesses", &[("f", &f)]);
    }
    Ok(())
}

fn prop_prepend_construction(t: &mut Trial) -> Result<(), Failure> {
    let n = t.degree(1).min(6);
    let f = random_stable(n, t.seed());
    let k = t.rng.range(1, 3) as usize;
    let eps_choices = ["1", "1/2", "1/8"];
    let epsilon = parse_rational(eps_choices[t.rng.below(3) as usize]).unwrap();
    let (prefix, combined) =
        prepend_stable(&f, k, &epsilon).map_err(|e| err_to_failure(t, "prepend_stable", e))?;
    if prefix.degree() != k - 1 || !prefix.is_positive() {
        return t.fail("prefix has wrong shape", &[("f", &f), ("prefix", &prefix)]);
    }
    if prefix.coeffs().iter().any(|c| c >= &epsilon) {
        return t.fail("prefix coefficient escapes the bound", &[("f", &f), ("prefix", &prefix)]);
    }
    if !is_hurwitz_stable(&combined).map_err(|e| err_to_failure(t, "criterion", e))? {
        return t.fail("prepended polynomial not stable", &[("f", &f), ("combined", &combined)]);
    }
    let rebuilt = Polynomial::prepend(&prefix, k, &f)
        .map_err(|e| err_to_failure(t, "prepend", e))?;
    if rebuilt != combined {
        return t.fail("combined disagrees with prefix + shift", &[("f", &f)]);
    }
    Ok(())
}

fn prop_lambda_uniform_exact(t: &mut Trial) -> Result<(), Failure> {
    let m = t.degree(3);
    let num = t.rng.range(1, 48) as i64;
    let epsilon = BigRational::new(BigInt::from(num), BigInt::from(16));
    let seeds = (
        BigRational::new(BigInt::from(t.rng.range(1, 8) as i64), BigInt::from(t.rng.range(1, 3) as i64)),
        BigRational::new(BigInt::from(t.rng.range(1, 8) as i64), BigInt::from(t.rng.range(1, 3) as i64)),
        BigRational::new(BigInt::from(t.rng.range(1, 8) as i64), BigInt::from(t.rng.range(1, 3) as i64)),
    );
    let g = lambda_uniform(m, &epsilon, Some(seeds))
        .map_err(|e| err_to_failure(t, "lambda_uniform", e))?;
    let lambdas = g.lambdas().map_err(|e| err_to_failure(t, "ratios", e))?;
    if lambdas.values().iter().any(|v| v != &epsilon) {
        return t.fail("ratio level missed", &[("g", &g)]);
    }
    let below_alpha =
        is_below(ConstantKind::AlphaStar, &epsilon).map_err(|e| err_to_failure(t, "comparison", e))?;
    if below_alpha && !is_hurwitz_stable(&g).map_err(|e| err_to_failure(t, "criterion", e))? {
        return t.fail("level below alpha-star but not stable", &[("g", &g)]);
    }
    Ok(())
}

fn prop_lambda_multiplicativity(t: &mut Trial) -> Result<(), Failure> {
    let n = t.degree(3);
    let m = t.degree_between(3, n);
    let f = random_positive(n, t.seed());
    let g = random_positive(m, t.seed());
    let lf = f.lambdas().map_err(|e| err_to_failure(t, "ratios", e))?;
    let lg = g.lambdas().map_err(|e| err_to_failure(t, "ratios", e))?;
    let product = f
        .generalized_hadamard(&g)
        .map_err(|e| err_to_failure(t, "generalized product", e))?;
    for (j, element) in product.elements().iter().enumerate() {
        let le = element.lambdas().map_err(|e| err_to_failure(t, "ratios", e))?;
        for i in 2..=m - 1 {
            let expected = lf.get(i + j).unwrap() * lg.get(i).unwrap();
            if le.get(i) != Some(&expected) {
                return t.fail(
                    format!("ratio multiplicativity fails at i={i}, j={j}"),
                    &[("f", &f), ("g", &g)],
                );
            }
        }
    }
    Ok(())
}

fn prop_minor_terminal_identity(t: &mut Trial) -> Result<(), Failure> {
    let n = t.degree(2);
    let f = random_positive(n, t.seed());
    let minors =
        leading_principal_minors(&f).map_err(|e| err_to_failure(t, "minors", e))?;
    if minors[n - 1] != f.coeff(0) * &minors[n - 2] {
        return t.fail("terminal minor identity fails", &[("f", &f)]);
    }
    Ok(())
}

fn prop_reversal_stability_equivalence(t: &mut Trial) -> Result<(), Failure> {
    let n = t.degree(1);
    let f = if t.index % 2 == 0 {
        random_stable(n, t.seed())
    } else {
        random_positive(n, t.seed())
    };
    let fwd = is_hurwitz_stable(&f).map_err(|e| err_to_failure(t, "criterion", e))?;
    let rev = is_hurwitz_stable(&f.reversal()).map_err(|e| err_to_failure(t, "criterion", e))?;
    if fwd != rev {
        return t.fail("reversal changes the verdict", &[("f", &f)]);
    }
    Ok(())
}

fn prop_stable_implies_ratio_bound(t: &mut Trial) -> Result<(), Failure> {
    let n = t.degree(3);
    let f = random_stable(n, t.seed());
    let lambdas = f.lambdas().map_err(|e| err_to_failure(t, "ratios", e))?;
    if lambdas.max() >= &BigRational::one() {
        return t.fail("stable polynomial with ratio at or above one", &[("f", &f)]);
    }
    Ok(())
}

fn prop_alpha_ratio_implies_stable(t: &mut Trial) -> Result<(), Failure> {
    let n = t.degree(3);
    let alpha = certified_constant(ConstantKind::AlphaStar);
    let f = random_ratio_bounded(n, t.seed(), &alpha.lo);
    if !is_hurwitz_stable(&f).map_err(|e| err_to_failure(t, "criterion", e))? {
        return t.fail("alpha-bounded ratios but unstable", &[("f", &f)]);
    }
    Ok(())
}

fn prop_ratio_sum_implies_stable(t: &mut Trial) -> Result<(), Failure> {
    let n = t.degree(3);
    let f = random_ratio_sum_bounded(n, t.seed());
    if !is_hurwitz_stable(&f).map_err(|e| err_to_failure(t, "criterion", e))? {
        return t.fail("ratio sum below one but unstable", &[("f", &f)]);
    }
    Ok(())
}

fn prop_ratio_sum_inside_ratio_bound(t: &mut Trial) -> Result<(), Failure> {
    let n = t.degree(5);
    let f = random_ratio_sum_bounded(n, t.seed());
    let lambdas = f.lambdas().map_err(|e| err_to_failure(t, "ratios", e))?;
    if lambdas.max() >= &BigRational::one() {
        return t.fail("ratio sum below one but some ratio at or above one", &[("f", &f)]);
    }
    Ok(())
}

fn prop_power_exponent_threshold(t: &mut Trial) -> Result<(), Failure> {
    let n = t.degree(3);
    let f = random_ratio_bounded(n, t.seed(), &BigRational::one());
    let enclosure = p_star(&f).map_err(|e| err_to_failure(t, "p_star", e))?;
    // a one-percent margin above the enclosure must already stabilize
    let p_test = &enclosure.hi * parse_rational("101/100").unwrap();
    let powered = f
        .hadamard_power(&p_test, 128)
        .map_err(|e| err_to_failure(t, "power", e))?;
    if !is_hurwitz_stable(&powered).map_err(|e| err_to_failure(t, "criterion", e))? {
        return t.fail(
            format!("power {} above threshold not stable", format_rational(&p_test)),
            &[("f", &f)],
        );
    }
    // the smallest integer above the threshold, computed exactly
    let p_int = enclosure.hi.floor().to_integer().to_u32().unwrap_or(0) + 1;
    let powered = f
        .hadamard_power(&BigRational::from_integer(BigInt::from(p_int)), 128)
        .map_err(|e| err_to_failure(t, "power", e))?;
    if !is_hurwitz_stable(&powered).map_err(|e| err_to_failure(t, "criterion", e))? {
        return t.fail(format!("integer power {p_int} not stable"), &[("f", &f)]);
    }
    Ok(())
}

fn prop_routh_hurwitz_root_agreement(t: &mut Trial) -> Result<(), Failure> {
    let n = t.degree(1);
    let f = match t.index % 3 {
        0 => random_stable(n, t.seed()),
        1 => random_positive(n, t.seed()),
        _ => {
            if n >= 3 {
                random_ratio_bounded(n, t.seed(), &BigRational::one())
            } else {
                random_stable(n, t.seed())
            }
        }
    };
    let stable = is_hurwitz_stable(&f).map_err(|e| err_to_failure(t, "criterion", e))?;
    let roots = roots_oracle(&f, DEFAULT_ROOT_PRECISION)
        .map_err(|e| err_to_failure(t, "root oracle", e))?;
    let max_re = roots.iter().map(|r| r.re.clone()).max().unwrap();
    let threshold = -t.config.quasi_tolerance.clone();
    let oracle_stable = max_re < threshold;
    if stable != oracle_stable {
        return t.fail(
            format!(
                "criterion says {stable}, oracle max real part {}",
                max_re.to_f64().unwrap_or(f64::NAN)
            ),
            &[("f", &f)],
        );
    }
    t.bump("oracle_polynomials");
    Ok(())
}

fn prop_text_format_roundtrip(t: &mut Trial) -> Result<(), Failure> {
    let n = t.degree(1);
    let f = if t.index % 2 == 0 {
        random_positive(n, t.seed())
    } else {
        random_stable(n, t.seed())
    };
    match Polynomial::parse(&f.to_text()) {
        Ok(back) if back == f => Ok(()),
        Ok(_) => t.fail("text round trip changed the polynomial", &[("f", &f)]),
        Err(e) => t.fail(format!("text round trip failed to parse: {e}"), &[("f", &f)]),
    }
}

fn registry() -> Vec<Property> {
    vec![
        Property { id: "hadamard_stable_closure", min_degree_hi: 1, run: prop_hadamard_stable_closure },
        Property { id: "low_degree_product_stability", min_degree_hi: 3, run: prop_low_degree_product_stability },
        Property { id: "endpoint_elements_stable", min_degree_hi: 1, run: prop_endpoint_elements_stable },
        Property { id: "interior_elements_quasi_stable", min_degree_hi: 1, run: prop_interior_elements_quasi_stable },
        Property { id: "factorable_g_product_stability", min_degree_hi: 1, run: prop_factorable_g_product_stability },
        Property { id: "ratio_bound_alpha_closure", min_degree_hi: 3, run: prop_ratio_bound_alpha_closure },
        Property { id: "ratio_bound_beta_to_alpha", min_degree_hi: 3, run: prop_ratio_bound_beta_to_alpha },
        Property { id: "ratio_sum_closure", min_degree_hi: 3, run: prop_ratio_sum_closure },
        Property { id: "stabilize_totality", min_degree_hi: 3, run: prop_stabilize_totality },
        Property { id: "stabilize_factorized_totality", min_degree_hi: 3, run: prop_stabilize_factorized_totality },
        Property { id: "extension_certificates", min_degree_hi: 1, run: prop_extension_certificates },
        Property { id: "prepend_construction", min_degree_hi: 1, run: prop_prepend_construction },
        Property { id: "lambda_uniform_exact", min_degree_hi: 3, run: prop_lambda_uniform_exact },
        Property { id: "lambda_multiplicativity", min_degree_hi: 3, run: prop_lambda_multiplicativity },
        Property { id: "minor_terminal_identity", min_degree_hi: 2, run: prop_minor_terminal_identity },
        Property { id: "reversal_stability_equivalence", min_degree_hi: 1, run: prop_reversal_stability_equivalence },
        Property { id: "stable_implies_ratio_bound", min_degree_hi: 3, run: prop_stable_implies_ratio_bound },
        Property { id: "alpha_ratio_implies_stable", min_degree_hi: 3, run: prop_alpha_ratio_implies_stable },
        Property { id: "ratio_sum_implies_stable", min_degree_hi: 3, run: prop_ratio_sum_implies_stable },
        Property { id: "ratio_sum_inside_ratio_bound", min_degree_hi: 5, run: prop_ratio_sum_inside_ratio_bound },
        Property { id: "power_exponent_threshold", min_degree_hi: 3, run: prop_power_exponent_threshold },
        Property { id: "routh_hurwitz_root_agreement", min_degree_hi: 1, run: prop_routh_hurwitz_root_agreement },
        Property { id: "text_format_roundtrip", min_degree_hi: 1, run: prop_text_format_roundtrip },
    ]
}

/// Every property id, in registry order.
pub fn property_ids() -> Vec<&'static str> {
    registry().iter().map(|p| p.id).collect()
}

/// Run the whole campaign; deterministic for a fixed config.
///
/// Per-property wall times go to stderr; the report itself carries no
/// timing so fixed-seed runs stay byte-identical.
pub fn run_campaign(config: &CampaignConfig) -> Result<CampaignReport, String> {
    config.validate()?;
    let mut properties = Vec::new();
    for property in registry() {
        let started = std::time::Instant::now();
        let mut counters = BTreeMap::new();
        let mut failures = Vec::new();
        let skipped = config.degree_hi < property.min_degree_hi;
        let trials = if skipped { 0 } else { config.trials };
        for index in 0..trials {
            let mut trial = Trial {
                rng: Rng64::new(trial_seed(config.seed, property.id, index)),
                index,
                config,
                counters: &mut counters,
            };
            if let Err(failure) = (property.run)(&mut trial) {
                failures.push(failure);
            }
        }
        eprintln!(
            "campaign: {:<34} {:>7.2?}",
            property.id,
            started.elapsed()
        );
        properties.push(PropertyReport {
            id: property.id,
            trials,
            failures,
            counters,
            skipped,
        });
    }
    Ok(CampaignReport {
        config: config.clone(),
        properties,
    })
}

/// Re-check the ordering helper used by membership comparisons; exposed so
/// the acceptance suite can assert the comparison side of the campaign.
pub fn compare_to_constant(kind: ConstantKind, value: &BigRational) -> Ordering {
    polystab::constants::compare(kind, value).expect("comparison separates rationals")
}
