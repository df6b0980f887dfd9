//! `polystab` — exact Hurwitz stability analysis at the command line.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, Context};
use clap::{Args, Parser, Subcommand};
use num::rational::BigRational;

use polystab::rational::{format_rational, parse_rational};
use polystab::report::{check, classify_with, default_tolerance};
use polystab::{
    certified_constant, extend_stable, stabilize, stabilize_factorized, ConstantKind, Polynomial,
    StabilityReport, Verdict, DEFAULT_POWER_PRECISION,
};

use polystab_cli::campaign::{run_campaign, CampaignConfig};
use polystab_cli::fixtures::{builtin_fixtures, parse_fixture, run_all, Fixture};

#[derive(Parser)]
#[command(
    name = "polystab",
    about = "Exact Hurwitz stability analysis of positive polynomials",
    long_about = "Polynomials are given as whitespace-separated rational coefficients in \
ascending powers (integers, decimals, or p/q), either inline or as a path to a file \
holding the same format. Example: '10 7 3 1' is s^3 + 3s^2 + 7s + 10."
)]
struct Cli {
    /// Emit machine-readable JSON instead of tables.
    #[arg(long, global = true)]
    json: bool,
    /// Quasi-stability tolerance (rational, default 1/1000000000).
    #[arg(long, global = true)]
    tol: Option<String>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Stability report for any polynomial (positivity not required).
    Check {
        poly: String,
        /// Exit with status 1 unless the verdict is `stable`.
        #[arg(long)]
        assert_stable: bool,
    },
    /// Full class membership report for a positive polynomial.
    Classify { poly: String },
    /// Coefficientwise (Hadamard) product of two polynomials.
    Product { f: String, g: String },
    /// Generalized Hadamard product with per-element stability reports.
    Gproduct { f: String, g: String },
    /// Hadamard power f^[p].
    Power {
        f: String,
        p: String,
        /// Mantissa bits for non-integer exponents.
        #[arg(long, default_value_t = DEFAULT_POWER_PRECISION)]
        bits: u32,
    },
    /// Extend a stable polynomial to a higher degree.
    Extend { f: String, target_degree: usize, epsilon: String },
    /// Find a partner g making every element of the generalized product stable.
    Stabilize {
        f: String,
        m: usize,
        /// Use the integer-power construction with a factorization witness.
        #[arg(long)]
        factorized: bool,
    },
    /// Print the certified threshold enclosures.
    Constants,
    /// Run the fixture suite; exits 1 on any mismatch.
    Fixtures {
        /// Load fixture JSON files from a directory instead of the built-ins.
        #[arg(long)]
        dir: Option<PathBuf>,
    },
    /// Run the property-test campaign; exits 1 on any failure.
    Campaign(CampaignArgs),
}

#[derive(Args)]
struct CampaignArgs {
    #[arg(long, default_value_t = 200)]
    trials: u64,
    #[arg(long, default_value_t = 0x5eed_2024)]
    seed: u64,
    /// Degree range as `lo..hi` (inclusive).
    #[arg(long, default_value = "1..10")]
    degrees: String,
    /// Write the JSON report to a file instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

fn read_polynomial(arg: &str) -> anyhow::Result<Polynomial> {
    let text = if Path::new(arg).is_file() {
        fs::read_to_string(arg).with_context(|| format!("reading {arg}"))?
    } else {
        arg.to_string()
    };
    Polynomial::parse(&text).map_err(|e| anyhow!("bad polynomial {arg:?}: {e}"))
}

fn tolerance(cli_tol: &Option<String>) -> anyhow::Result<BigRational> {
    match cli_tol {
        None => Ok(default_tolerance()),
        Some(text) => {
            let t = parse_rational(text).map_err(|e| anyhow!("bad --tol: {e}"))?;
            Ok(t)
        }
    }
}

fn print_report(report: &StabilityReport, json: bool) {
    if json {
        println!("{}", serde_json::to_string_pretty(&report.to_json()).unwrap());
        return;
    }
    println!("verdict: {}", report.verdict);
    let minors = report
        .minors
        .iter()
        .map(format_rational)
        .collect::<Vec<_>>()
        .join(", ");
    println!("minors:  [{minors}]");
    if let Some(lambdas) = &report.lambdas {
        let values = lambdas
            .values()
            .iter()
            .map(format_rational)
            .collect::<Vec<_>>()
            .join(", ");
        println!("lambdas: [{values}]");
    }
    let m = &report.memberships;
    println!(
        "classes: positive={} lambda<1={} lambda<alpha*={} lambda<beta*={} sum(lambda)<1={}",
        m.positive, m.lambda_lt_one, m.lambda_lt_alpha_star, m.lambda_lt_beta_star, m.lambda_sum_lt_one
    );
    if !report.boundary_roots.is_empty() {
        let roots = report
            .boundary_roots
            .iter()
            .map(|r| {
                let (re, im) = r.to_f64();
                format!("{re:.3e}{im:+.6}i")
            })
            .collect::<Vec<_>>()
            .join(", ");
        println!("boundary roots: [{roots}]");
    }
}

fn load_fixtures(dir: &Option<PathBuf>) -> anyhow::Result<Vec<Fixture>> {
    match dir {
        None => builtin_fixtures().map_err(|e| anyhow!("built-in fixtures: {e}")),
        Some(path) => {
            let mut entries: Vec<PathBuf> = fs::read_dir(path)
                .with_context(|| format!("reading {}", path.display()))?
                .filter_map(|e| e.ok().map(|e| e.path()))
                .filter(|p| p.extension().is_some_and(|ext| ext == "json"))
                .collect();
            entries.sort();
            entries
                .iter()
                .map(|p| {
                    let text = fs::read_to_string(p)
                        .with_context(|| format!("reading {}", p.display()))?;
                    parse_fixture(&text).map_err(|e| anyhow!("{}: {e}", p.display()))
                })
                .collect()
        }
    }
}

fn parse_degree_range(text: &str) -> anyhow::Result<(usize, usize)> {
    let (lo, hi) = text
        .split_once("..")
        .ok_or_else(|| anyhow!("degrees must look like 1..10"))?;
    Ok((lo.trim().parse()?, hi.trim().parse()?))
}

fn run(cli: Cli) -> anyhow::Result<ExitCode> {
    let tol = tolerance(&cli.tol)?;
    match cli.command {
        Command::Check { poly, assert_stable } => {
            let f = read_polynomial(&poly)?;
            let report = check(&f, &tol)?;
            print_report(&report, cli.json);
            if assert_stable && report.verdict != Verdict::Stable {
                return Ok(ExitCode::from(1));
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Classify { poly } => {
            let f = read_polynomial(&poly)?;
            let report = classify_with(&f, &tol)?;
            print_report(&report, cli.json);
            Ok(ExitCode::SUCCESS)
        }
        Command::Product { f, g } => {
            let f = read_polynomial(&f)?;
            let g = read_polynomial(&g)?;
            let product = f.hadamard_product(&g)?;
            if cli.json {
                println!(
                    "{}",
                    serde_json::json!({ "product": product.to_text() })
                );
            } else {
                println!("{product}");
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Gproduct { f, g } => {
            let f = read_polynomial(&f)?;
            let g = read_polynomial(&g)?;
            let product = f.generalized_hadamard(&g)?;
            if cli.json {
                let elements: Vec<serde_json::Value> = product
                    .elements()
                    .iter()
                    .map(|e| {
                        let report = check(e, &tol)?;
                        Ok(serde_json::json!({
                            "polynomial": e.to_text(),
                            "report": report.to_json(),
                        }))
                    })
                    .collect::<anyhow::Result<_>>()?;
                println!(
                    "{}",
                    serde_json::to_string_pretty(&serde_json::json!({
                        "f": f.to_text(),
                        "g": g.to_text(),
                        "windows": product.windows().iter().map(|w| w.to_text()).collect::<Vec<_>>(),
                        "elements": elements,
                    }))
                    .unwrap()
                );
            } else {
                for (j, element) in product.elements().iter().enumerate() {
                    let report = check(element, &tol)?;
                    println!("element {j}: {element}  [{}]", report.verdict);
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Power { f, p, bits } => {
            let f = read_polynomial(&f)?;
            let exponent = parse_rational(&p).map_err(|e| anyhow!("bad exponent: {e}"))?;
            let powered = f.hadamard_power(&exponent, bits)?;
            if cli.json {
                println!("{}", serde_json::json!({ "power": powered.to_text() }));
            } else {
                println!("{powered}");
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Extend { f, target_degree, epsilon } => {
            let f = read_polynomial(&f)?;
            let eps = parse_rational(&epsilon).map_err(|e| anyhow!("bad epsilon: {e}"))?;
            let cert = extend_stable(&f, target_degree, &eps)?;
            if cli.json {
                println!("{}", serde_json::to_string_pretty(&cert.to_json()).unwrap());
            } else {
                println!("result: {}", cert.result);
                let appended = cert
                    .appended
                    .iter()
                    .map(format_rational)
                    .collect::<Vec<_>>()
                    .join(", ");
                println!("appended coefficients: [{appended}]");
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Stabilize { f, m, factorized } => {
            let f = read_polynomial(&f)?;
            let result = if factorized {
                stabilize_factorized(&f, m)?
            } else {
                stabilize(&f, m)?
            };
            if cli.json {
                println!("{}", serde_json::to_string_pretty(&result.to_json()).unwrap());
            } else {
                println!("g = {}", result.g);
                if let Some(eps) = &result.epsilon {
                    println!("epsilon = {}", format_rational(eps));
                }
                if let Some(p) = result.power {
                    println!("power = {p}");
                }
                for (j, element) in result.product.elements().iter().enumerate() {
                    println!("element {j}: {element}  [stable]");
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Constants => {
            let kinds = [
                ConstantKind::AlphaStar,
                ConstantKind::BetaStar,
                ConstantKind::GammaStar,
            ];
            if cli.json {
                let values: Vec<serde_json::Value> = kinds
                    .iter()
                    .map(|&k| certified_constant(k).to_json())
                    .collect();
                println!(
                    "{}",
                    serde_json::to_string_pretty(&serde_json::Value::Array(values)).unwrap()
                );
            } else {
                for kind in kinds {
                    let c = certified_constant(kind);
                    println!(
                        "{kind}: {:.12} (width {:.3e})",
                        c.midpoint_f64(),
                        c.width().to_string().parse::<f64>().unwrap_or(f64::NAN)
                    );
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Fixtures { dir } => {
            let fixtures = load_fixtures(&dir)?;
            let (reports, all_passed) = run_all(&fixtures)?;
            if cli.json {
                let values: Vec<serde_json::Value> = reports.iter().map(|r| r.to_json()).collect();
                println!(
                    "{}",
                    serde_json::to_string_pretty(&serde_json::json!({
                        "fixtures": values,
                        "all_passed": all_passed,
                    }))
                    .unwrap()
                );
            } else {
                for report in &reports {
                    print!("{}", report.render_text());
                }
                println!("overall: {}", if all_passed { "PASS" } else { "FAIL" });
            }
            Ok(if all_passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
        Command::Campaign(args) => {
            let (degree_lo, degree_hi) = parse_degree_range(&args.degrees)?;
            let config = CampaignConfig {
                degree_lo,
                degree_hi,
                trials: args.trials,
                seed: args.seed,
                quasi_tolerance: tol,
            };
            let report = run_campaign(&config).map_err(|e| anyhow!(e))?;
            let json = serde_json::to_string_pretty(&report.to_json()).unwrap();
            match &args.out {
                Some(path) => {
                    fs::write(path, &json).with_context(|| format!("writing {}", path.display()))?;
                    eprintln!("report written to {}", path.display());
                }
                None => {
                    if cli.json {
                        println!("{json}");
                    } else {
                        for p in &report.properties {
                            let status = if p.skipped {
                                "skipped".to_string()
                            } else if p.passed() {
                                format!("PASS ({} trials)", p.trials)
                            } else {
                                format!("FAIL ({} failures)", p.failures.len())
                            };
                            println!("{:<34} {}", p.id, status);
                        }
                    }
                }
            }
            Ok(if report.all_passed() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
