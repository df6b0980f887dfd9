//! The fixture suite: small polynomials with pinned expected facts.
//!
//! Every fact carries a provenance tag: `reference` for values quoted
//! from the literature, `trivial` for values readable by inspection, and
//! `derived` for values computed by an independent route (hand expansion,
//! cofactor determinants, the root oracle). The runner recomputes every
//! fact and reports computed-vs-expected per line.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num::rational::BigRational;
use serde::Deserialize;

use polystab::{
    certified_constant, classify, factorization_sufficient, is_quasi_stable, p_star,
    leading_principal_minors, report::default_tolerance, residual, stabilize_factorized,
    ConstantKind, Error, HurwitzMatrix, Polynomial, Result, Verdict,
};
use polystab::rational::{format_rational, parse_rational};
use num::Signed;

/// One fixture file: named polynomials plus a list of expected facts.
#[derive(Debug, Deserialize)]
pub struct Fixture {
    pub id: String,
    #[serde(default)]
    pub description: String,
    pub polynomials: BTreeMap<String, String>,
    pub facts: Vec<Fact>,
}

#[derive(Debug, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum Fact {
    /// `λ_index` of a polynomial equals `expect` exactly.
    Lambda { poly: String, index: usize, expect: String, provenance: String },
    /// `Σ λ_i` equals `expect` exactly.
    LambdaSum { poly: String, expect: String, provenance: String },
    /// `Δ_index` equals `expect` exactly.
    Minor { poly: String, index: usize, expect: String, provenance: String },
    /// The whole minor sequence `Δ_1 ..= Δ_n`.
    Minors { poly: String, expect: Vec<String>, provenance: String },
    /// Three-way stability verdict.
    VerdictIs { poly: String, expect: String, provenance: String },
    /// A membership flag from the classify report.
    Membership { poly: String, class: String, expect: bool, provenance: String },
    /// Membership in the `λ < alpha` class for an explicit rational alpha.
    WAlphaAt { poly: String, alpha: String, expect: bool, provenance: String },
    /// The full Hurwitz matrix, row by row.
    HurwitzRows { poly: String, rows: Vec<Vec<String>>, provenance: String },
    /// Window `j` of size `m` equals the given polynomial.
    Window { poly: String, m: usize, j: usize, expect: String, provenance: String },
    /// `Δ_index` of window `j` of size `m`.
    WindowMinor { poly: String, m: usize, j: usize, index: usize, expect: String, provenance: String },
    /// Verdict of window `j` of size `m`.
    WindowVerdict { poly: String, m: usize, j: usize, expect: String, provenance: String },
    /// `f ∘ g` equals the given polynomial exactly.
    HadamardIs { f: String, g: String, expect: String, provenance: String },
    /// The elements of `f • g`, in order.
    GeneralizedElements { f: String, g: String, expect: Vec<String>, provenance: String },
    /// Verdict of `f^[p]` at each listed power precision.
    PowerVerdict { poly: String, p: String, expect: String, precisions: Vec<u32>, provenance: String },
    /// Membership flag of `f^[p]`.
    PowerMembership { poly: String, p: String, class: String, expect: bool, provenance: String },
    /// Verdict of `f ∘ f^[p]` at each listed power precision.
    PowerProductVerdict { poly: String, p: String, expect: String, precisions: Vec<u32>, provenance: String },
    /// The `p*` enclosure rounds to these digits (4 decimal places).
    PStarRoundsTo { poly: String, digits: String, provenance: String },
    /// The factorized stabilizer output for window size `m`.
    StabilizeFactorized {
        poly: String,
        m: usize,
        expect_p: u32,
        expect_g: String,
        expect_elements: Vec<String>,
        provenance: String,
    },
    /// The coefficientwise-factorization sufficiency test.
    FactorizationSufficient { poly: String, expect: bool, provenance: String },
    /// A certified constant matches the given digits within `tol`, and its
    /// residual changes sign across the enclosure.
    ConstantContains { constant: String, digits: String, tol: String, provenance: String },
}

/// Outcome of re-checking one fact.
#[derive(Debug, Clone)]
pub struct FactResult {
    pub description: String,
    pub expected: String,
    pub computed: String,
    pub provenance: String,
    pub pass: bool,
}

#[derive(Debug)]
pub struct FixtureReport {
    pub id: String,
    pub results: Vec<FactResult>,
}

impl FixtureReport {
    pub fn passed(&self) -> bool {
        self.results.iter().all(|r| r.pass)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "id": self.id,
            "passed": self.passed(),
            "facts": self.results.iter().map(|r| serde_json::json!({
                "description": r.description,
                "expected": r.expected,
                "computed": r.computed,
                "provenance": r.provenance,
                "pass": r.pass,
            })).collect::<Vec<_>>(),
        })
    }

    pub fn render_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "fixture {}: {}", self.id, if self.passed() { "PASS" } else { "FAIL" });
        for r in &self.results {
            let _ = writeln!(
                out,
                "  [{}] {} ({}) expected={} computed={}",
                if r.pass { "ok" } else { "MISMATCH" },
                r.description,
                r.provenance,
                r.expected,
                r.computed
            );
        }
        out
    }
}

/// The built-in fixture set, embedded at compile time.
pub fn builtin_fixtures() -> Result<Vec<Fixture>> {
    const FILES: &[&str] = &[
        include_str!("../fixtures/ex1.json"),
        include_str!("../fixtures/ex2.json"),
        include_str!("../fixtures/ex3.json"),
        include_str!("../fixtures/ex4.json"),
        include_str!("../fixtures/ex5.json"),
        include_str!("../fixtures/witnesses.json"),
        include_str!("../fixtures/constants.json"),
    ];
    FILES.iter().map(|text| parse_fixture(text)).collect()
}

pub fn parse_fixture(text: &str) -> Result<Fixture> {
    serde_json::from_str(text).map_err(|e| Error::Parse(format!("fixture: {e}")))
}

fn constant_kind(name: &str) -> Result<ConstantKind> {
    match name {
        "alpha-star" => Ok(ConstantKind::AlphaStar),
        "beta-star" => Ok(ConstantKind::BetaStar),
        "gamma-star" => Ok(ConstantKind::GammaStar),
        other => Err(Error::Parse(format!("unknown constant {other:?}"))),
    }
}

fn membership_flag(report: &polystab::StabilityReport, class: &str) -> Result<bool> {
    Ok(match class {
        "positive" => report.memberships.positive,
        "lambda_lt_one" => report.memberships.lambda_lt_one,
        "lambda_lt_alpha_star" => report.memberships.lambda_lt_alpha_star,
        "lambda_lt_beta_star" => report.memberships.lambda_lt_beta_star,
        "lambda_sum_lt_one" => report.memberships.lambda_sum_lt_one,
        other => return Err(Error::Parse(format!("unknown class {other:?}"))),
    })
}

struct Ctx {
    polys: BTreeMap<String, Polynomial>,
}

impl Ctx {
    fn poly(&self, name: &str) -> Result<&Polynomial> {
        self.polys
            .get(name)
            .ok_or_else(|| Error::Parse(format!("fixture names unknown polynomial {name:?}")))
    }
}

/// Evaluate one fixture, recomputing every fact.
pub fn run_fixture(fixture: &Fixture) -> Result<FixtureReport> {
    let mut polys = BTreeMap::new();
    for (name, text) in &fixture.polynomials {
        polys.insert(name.clone(), Polynomial::parse(text)?);
    }
    let ctx = Ctx { polys };
    let tol = default_tolerance();
    let mut results = Vec::new();
    for fact in &fixture.facts {
        results.push(eval_fact(&ctx, fact, &tol)?);
    }
    Ok(FixtureReport {
        id: fixture.id.clone(),
        results,
    })
}

fn rational_result(
    description: String,
    provenance: &str,
    expected: &BigRational,
    computed: &BigRational,
) -> FactResult {
    FactResult {
        description,
        expected: format_rational(expected),
        computed: format_rational(computed),
        provenance: provenance.to_string(),
        pass: expected == computed,
    }
}

fn bool_result(description: String, provenance: &str, expected: bool, computed: bool) -> FactResult {
    FactResult {
        description,
        expected: expected.to_string(),
        computed: computed.to_string(),
        provenance: provenance.to_string(),
        pass: expected == computed,
    }
}

fn text_result(description: String, provenance: &str, expected: String, computed: String) -> FactResult {
    FactResult {
        pass: expected == computed,
        description,
        expected,
        computed,
        provenance: provenance.to_string(),
    }
}

fn eval_fact(ctx: &Ctx, fact: &Fact, tol: &BigRational) -> Result<FactResult> {
    Ok(match fact {
        Fact::Lambda { poly, index, expect, provenance } => {
            let f = ctx.poly(poly)?;
            let lambdas = f.lambdas()?;
            let computed = lambdas
                .get(*index)
                .cloned()
                .ok_or(Error::Parse(format!("lambda index {index} out of range")))?;
            rational_result(
                format!("lambda_{index}({poly})"),
                provenance,
                &parse_rational(expect)?,
                &computed,
            )
        }
        Fact::LambdaSum { poly, expect, provenance } => {
            let sum = ctx.poly(poly)?.lambdas()?.sum();
            rational_result(format!("lambda sum({poly})"), provenance, &parse_rational(expect)?, &sum)
        }
        Fact::Minor { poly, index, expect, provenance } => {
            let minors = leading_principal_minors(ctx.poly(poly)?)?;
            let computed = minors
                .get(index - 1)
                .cloned()
                .ok_or(Error::Parse(format!("minor index {index} out of range")))?;
            rational_result(
                format!("minor_{index}({poly})"),
                provenance,
                &parse_rational(expect)?,
                &computed,
            )
        }
        Fact::Minors { poly, expect, provenance } => {
            let minors = leading_principal_minors(ctx.poly(poly)?)?;
            let computed = minors.iter().map(format_rational).collect::<Vec<_>>().join(" ");
            text_result(format!("minors({poly})"), provenance, expect.join(" "), computed)
        }
        Fact::VerdictIs { poly, expect, provenance } => {
            let verdict = is_quasi_stable(ctx.poly(poly)?, tol)?;
            let expected: Verdict = expect.parse()?;
            text_result(
                format!("verdict({poly})"),
                provenance,
                expected.to_string(),
                verdict.to_string(),
            )
        }
        Fact::Membership { poly, class, expect, provenance } => {
            let report = classify(ctx.poly(poly)?)?;
            let computed = membership_flag(&report, class)?;
            bool_result(format!("{class}({poly})"), provenance, *expect, computed)
        }
        Fact::WAlphaAt { poly, alpha, expect, provenance } => {
            let bound = parse_rational(alpha)?;
            let computed = ctx.poly(poly)?.lambdas()?.all_below(&bound);
            bool_result(
                format!("lambda({poly}) < {alpha}"),
                provenance,
                *expect,
                computed,
            )
        }
        Fact::HurwitzRows { poly, rows, provenance } => {
            let h = HurwitzMatrix::new(ctx.poly(poly)?)?;
            let computed = h
                .rows()
                .iter()
                .map(|r| r.iter().map(format_rational).collect::<Vec<_>>().join(" "))
                .collect::<Vec<_>>()
                .join("; ");
            let expected = rows
                .iter()
                .map(|r| {
                    r.iter()
                        .map(|s| parse_rational(s).map(|v| format_rational(&v)))
                        .collect::<Result<Vec<_>>>()
                        .map(|v| v.join(" "))
                })
                .collect::<Result<Vec<_>>>()?
                .join("; ");
            text_result(format!("hurwitz matrix({poly})"), provenance, expected, computed)
        }
        Fact::Window { poly, m, j, expect, provenance } => {
            let windows = ctx.poly(poly)?.windows(*m)?;
            let w = windows
                .get(*j)
                .ok_or(Error::Parse(format!("window {j} out of range")))?;
            text_result(
                format!("window_{j}({poly}, m={m})"),
                provenance,
                Polynomial::parse(expect)?.to_text(),
                w.to_text(),
            )
        }
        Fact::WindowMinor { poly, m, j, index, expect, provenance } => {
            let windows = ctx.poly(poly)?.windows(*m)?;
            let w = windows
                .get(*j)
                .ok_or(Error::Parse(format!("window {j} out of range")))?;
            let minors = leading_principal_minors(w)?;
            rational_result(
                format!("minor_{index}(window_{j}({poly}, m={m}))"),
                provenance,
                &parse_rational(expect)?,
                &minors[index - 1],
            )
        }
        Fact::WindowVerdict { poly, m, j, expect, provenance } => {
            let windows = ctx.poly(poly)?.windows(*m)?;
            let w = windows
                .get(*j)
                .ok_or(Error::Parse(format!("window {j} out of range")))?;
            let verdict = is_quasi_stable(w, tol)?;
            text_result(
                format!("verdict(window_{j}({poly}, m={m}))"),
                provenance,
                expect.parse::<Verdict>()?.to_string(),
                verdict.to_string(),
            )
        }
        Fact::HadamardIs { f, g, expect, provenance } => {
            let product = ctx.poly(f)?.hadamard_product(ctx.poly(g)?)?;
            text_result(
                format!("{f} hadamard {g}"),
                provenance,
                Polynomial::parse(expect)?.to_text(),
                product.to_text(),
            )
        }
        Fact::GeneralizedElements { f, g, expect, provenance } => {
            let product = ctx.poly(f)?.generalized_hadamard(ctx.poly(g)?)?;
            let computed = product
                .elements()
                .iter()
                .map(|e| e.to_text())
                .collect::<Vec<_>>()
                .join("; ");
            let expected = expect
                .iter()
                .map(|t| Polynomial::parse(t).map(|p| p.to_text()))
                .collect::<Result<Vec<_>>>()?
                .join("; ");
            text_result(format!("elements({f} . {g})"), provenance, expected, computed)
        }
        Fact::PowerVerdict { poly, p, expect, precisions, provenance } => {
            let exponent = parse_rational(p)?;
            let f = ctx.poly(poly)?;
            let expected: Verdict = expect.parse()?;
            let mut verdicts = Vec::new();
            for bits in precisions {
                let powered = f.hadamard_power(&exponent, *bits)?;
                verdicts.push(is_quasi_stable(&powered, tol)?);
            }
            text_result(
                format!("verdict({poly}^[{p}]) at {precisions:?} bits"),
                provenance,
                vec![expected; precisions.len()]
                    .iter()
                    .map(|v| v.to_string())
                    .collect::<Vec<_>>()
                    .join(" "),
                verdicts.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(" "),
            )
        }
        Fact::PowerMembership { poly, p, class, expect, provenance } => {
            let exponent = parse_rational(p)?;
            let powered = ctx.poly(poly)?.hadamard_power(&exponent, polystab::DEFAULT_POWER_PRECISION)?;
            let report = classify(&powered)?;
            let computed = membership_flag(&report, class)?;
            bool_result(format!("{class}({poly}^[{p}])"), provenance, *expect, computed)
        }
        Fact::PowerProductVerdict { poly, p, expect, precisions, provenance } => {
            let exponent = parse_rational(p)?;
            let f = ctx.poly(poly)?;
            let expected: Verdict = expect.parse()?;
            let mut verdicts = Vec::new();
            for bits in precisions {
                let powered = f.hadamard_power(&exponent, *bits)?;
                let product = f.hadamard_product(&powered)?;
                verdicts.push(is_quasi_stable(&product, tol)?);
            }
            text_result(
                format!("verdict({poly} hadamard {poly}^[{p}]) at {precisions:?} bits"),
                provenance,
                vec![expected; precisions.len()]
                    .iter()
                    .map(|v| v.to_string())
                    .collect::<Vec<_>>()
                    .join(" "),
                verdicts.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(" "),
            )
        }
        Fact::PStarRoundsTo { poly, digits, provenance } => {
            let enclosure = p_star(ctx.poly(poly)?)?;
            let value = parse_rational(digits)?;
            let half_ulp = parse_rational("1/20000")?; // 4-decimal rounding window
            let lo_ok = enclosure.lo >= &value - &half_ulp;
            let hi_ok = enclosure.hi <= &value + &half_ulp;
            FactResult {
                description: format!("p_star({poly}) rounds to {digits}"),
                expected: digits.clone(),
                computed: format!("{:.6}", enclosure.midpoint_f64()),
                provenance: provenance.to_string(),
                pass: lo_ok && hi_ok,
            }
        }
        Fact::StabilizeFactorized { poly, m, expect_p, expect_g, expect_elements, provenance } => {
            let result = stabilize_factorized(ctx.poly(poly)?, *m)?;
            let stable = result
                .verification
                .iter()
                .all(|r| r.verdict == polystab::Verdict::Stable);
            let computed = format!(
                "p={} g=[{}] elements=[{}] all_stable={}",
                result.power.map(|p| p.to_string()).unwrap_or_default(),
                result.g.to_text(),
                result
                    .product
                    .elements()
                    .iter()
                    .map(|e| e.to_text())
                    .collect::<Vec<_>>()
                    .join("; "),
                stable,
            );
            let expected = format!(
                "p={} g=[{}] elements=[{}] all_stable=true",
                expect_p,
                Polynomial::parse(expect_g)?.to_text(),
                expect_elements
                    .iter()
                    .map(|t| Polynomial::parse(t).map(|p| p.to_text()))
                    .collect::<Result<Vec<_>>>()?
                    .join("; "),
            );
            text_result(
                format!("stabilize_factorized({poly}, m={m})"),
                provenance,
                expected,
                computed,
            )
        }
        Fact::FactorizationSufficient { poly, expect, provenance } => {
            let check = factorization_sufficient(ctx.poly(poly)?)?;
            bool_result(
                format!("factorization_sufficient({poly})"),
                provenance,
                *expect,
                check.sufficient,
            )
        }
        Fact::ConstantContains { constant, digits, tol, provenance } => {
            let kind = constant_kind(constant)?;
            let c = certified_constant(kind);
            let value = parse_rational(digits)?;
            let tolerance = parse_rational(tol)?;
            let mid = c.midpoint();
            let close = (&mid - &value).abs() <= tolerance;
            let signs_ok =
                residual(kind, &c.lo).is_negative() && residual(kind, &c.hi).is_positive();
            let width_ok = c.width() <= parse_rational("1/1000000000000")?;
            FactResult {
                description: format!("{constant} contains {digits}"),
                expected: digits.clone(),
                computed: format!("{:.7}", c.midpoint_f64()),
                provenance: provenance.to_string(),
                pass: close && signs_ok && width_ok,
            }
        }
    })
}

/// Run every fixture; the boolean is the overall pass flag.
pub fn run_all(fixtures: &[Fixture]) -> Result<(Vec<FixtureReport>, bool)> {
    let mut reports = Vec::new();
    let mut all = true;
    for fixture in fixtures {
        let report = run_fixture(fixture)?;
        all &= report.passed();
        reports.push(report);
    }
    Ok((reports, all))
}
