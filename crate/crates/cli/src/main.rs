//! `contracta`: evaluate operations on Laurent series, cocycle extensions,
//! multipliers and Heisenberg groups, and run the named verification suites.
//!
//! Exit codes: 0 success or all checks passed, 1 a check failed, 2 usage or
//! input error.

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use contracta::cocycles::{eta, CocycleSpec};
use contracta::duality::{chi_char, contraction_time};
use contracta::extensions::{ext_commutator, ext_inv, ext_mul, ExtElem};
use contracta::heisenberg::{heis_dual_action, heis_inv, heis_mul, orbit_description, orbit_membership, HeisElem, NPoint};
use contracta::laurent::parse_series;
use contracta::multipliers::{h_omega, in_s_omega, omega, omega2, omega2_closed_form, type_i_verdict, MultiplierSpec};
use contracta::report::SCHEMA_VERSION;
use contracta::spec_io::{ingest_spec, TypedSpec};
use contracta::suites::{run_suite, SUITES};
use contracta::{Error, LaurentElem};

#[derive(Parser)]
#[command(name = "contracta", version, about = "Exact arithmetic for contraction groups and their extensions")]
struct Cli {
    /// Print the JSON report instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Also write the JSON report to FILE.
    #[arg(long, global = true, value_name = "FILE")]
    out: Option<PathBuf>,
    /// Record wall time in the report (reports are then not reproducible).
    #[arg(long, global = true)]
    timing: bool,
    #[command(subcommand)]
    command: Command,
}

/// Cocycle data given inline or through a spec file.
#[derive(clap::Args, Clone)]
struct CocycleArgs {
    #[arg(long)]
    p: Option<u64>,
    /// Comma-separated S ⊂ {1, 2, …}.
    #[arg(long, value_delimiter = ',')]
    support: Vec<u32>,
    /// JSON spec file ({p, support} or {cocycle, z}).
    #[arg(long, value_name = "FILE")]
    spec: Option<PathBuf>,
}

#[derive(clap::Args, Clone)]
struct MultiplierArgs {
    #[command(flatten)]
    cocycle: CocycleArgs,
    /// The series z, e.g. "per[1]*t^{>=1} @ p=2^1".
    #[arg(long)]
    z: Option<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate a series, or `A + B`, `A - B`, `A * B`.
    Eval {
        a: String,
        op: Option<String>,
        b: Option<String>,
        /// Multiply the result by t^k.
        #[arg(long, allow_hyphen_values = true)]
        shift: Option<i64>,
    },
    /// The character χ_y(x); with --k, also the contraction time on {ν ≥ k}.
    Char {
        y: String,
        x: String,
        #[arg(long, allow_hyphen_values = true)]
        k: Option<i64>,
    },
    /// η_s(x, y).
    Cocycle {
        #[command(flatten)]
        cocycle: CocycleArgs,
        x: String,
        y: String,
    },
    /// (w₁, x₁)·(w₂, x₂) in the extension, and the inverse of the first.
    Ext {
        #[command(flatten)]
        cocycle: CocycleArgs,
        w1: String,
        x1: String,
        w2: String,
        x2: String,
    },
    /// [(0, tⁿ), (0, t^{n+2k})] in the extension.
    Commutator {
        #[command(flatten)]
        cocycle: CocycleArgs,
        #[arg(allow_hyphen_values = true)]
        n: i64,
        k: i64,
    },
    /// ω(x, y), ω⁽²⁾(x, y) and its closed form.
    Multiplier {
        #[command(flatten)]
        spec: MultiplierArgs,
        x: String,
        y: String,
    },
    /// Whether x ∈ S_ω, with h_ω(x).
    SOmega {
        #[command(flatten)]
        spec: MultiplierArgs,
        x: String,
    },
    /// Witness search for a non-type-I multiplier.
    Verdict {
        #[command(flatten)]
        spec: MultiplierArgs,
        #[arg(long, default_value_t = 12)]
        depth: u32,
    },
    /// Product of two Heisenberg elements given as JSON {n, p, xi, upsilon, z}.
    Heis { g: String, h: String },
    /// Orbit of a character index (JSON {upsilon, z}) under (ξ, 0, 0).
    Orbit {
        index: String,
        /// Membership query (JSON {upsilon, z}).
        #[arg(long)]
        query: Option<String>,
        /// Apply (ξ, 0, 0); comma-separated series, one per coordinate.
        #[arg(long, value_delimiter = ',')]
        xi: Vec<String>,
        #[arg(long, default_value_t = contracta::heisenberg::DIVISION_STEPS)]
        steps: usize,
    },
    /// Run a verification suite (`--list` to see them).
    Verify {
        suite: Option<String>,
        /// JSON parameters, inline or as @FILE.
        #[arg(long)]
        params: Option<String>,
        #[arg(long)]
        list: bool,
    },
}

enum Outcome {
    /// An operation result.
    Value(Value),
    /// A suite result; `false` means a check failed.
    Checked(Value, bool),
}

fn series(text: &str) -> Result<LaurentElem, Error> {
    parse_series(text.trim())
}

fn json_arg(text: &str) -> Result<Value, Error> {
    let raw = match text.strip_prefix('@') {
        Some(path) => std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{path}: {e}")))?,
        None => text.to_string(),
    };
    serde_json::from_str(&raw).map_err(|e| Error::Schema(e.to_string()))
}

fn cocycle_of(args: &CocycleArgs) -> Result<CocycleSpec, Error> {
    if let Some(path) = &args.spec {
        return match ingest_spec(path)? {
            TypedSpec::Cocycle(s) => Ok(s),
            TypedSpec::Multiplier(m) => Ok(m.cocycle().clone()),
            _ => Err(Error::Schema("spec file does not describe a cocycle".into())),
        };
    }
    let p = args.p.ok_or_else(|| Error::InvalidParams("give --p and --support, or --spec".into()))?;
    CocycleSpec::new(p, args.support.clone())
}

fn multiplier_of(args: &MultiplierArgs) -> Result<MultiplierSpec, Error> {
    if let (Some(path), None) = (&args.cocycle.spec, &args.z) {
        if let TypedSpec::Multiplier(m) = ingest_spec(path)? {
            return Ok(m);
        }
    }
    let s = cocycle_of(&args.cocycle)?;
    let z = args.z.as_deref().ok_or_else(|| Error::InvalidParams("give --z or a multiplier spec file".into()))?;
    MultiplierSpec::new(s, series(z)?)
}

fn text(x: &LaurentElem) -> Value {
    Value::String(x.to_string())
}

fn ext_value(g: &ExtElem) -> Value {
    json!({"w": text(g.w()), "x": text(g.x())})
}

fn execute(command: &Command) -> Result<Outcome, Error> {
    let out = match command {
        Command::Eval { a, op, b, shift } => {
            let x = series(a)?;
            let mut r = match (op.as_deref(), b) {
                (None, None) => x,
                (Some("+"), Some(b)) => x.add(&series(b)?)?,
                (Some("-"), Some(b)) => x.sub(&series(b)?)?,
                (Some("*"), Some(b)) => x.mul(&series(b)?)?,
                _ => return Err(Error::InvalidParams("expected `A`, or `A OP B` with OP one of + - *".into())),
            };
            if let Some(k) = shift {
                r = r.shift(*k);
            }
            Outcome::Value(json!({"value": text(&r), "valuation": r.valuation().to_string()}))
        }
        Command::Char { y, x, k } => {
            let (y, x) = (series(y)?, series(x)?);
            let mut v = json!({"chi": chi_char(&y, &x)?.to_string()});
            if let Some(k) = k {
                v["contraction_time"] = json!(contraction_time(&y, *k)?);
            }
            Outcome::Value(v)
        }
        Command::Cocycle { cocycle, x, y } => {
            let s = cocycle_of(cocycle)?;
            Outcome::Value(json!({"cocycle": s, "eta": text(&eta(&s, &series(x)?, &series(y)?)?)}))
        }
        Command::Ext { cocycle, w1, x1, w2, x2 } => {
            let s = cocycle_of(cocycle)?;
            let g = ExtElem::new(s.clone(), series(w1)?, series(x1)?)?;
            let h = ExtElem::new(s, series(w2)?, series(x2)?)?;
            Outcome::Value(json!({
                "product": ext_value(&ext_mul(&g, &h)?),
                "inverse": ext_value(&ext_inv(&g)),
                "commutator": ext_value(&ext_commutator(&g, &h)?),
            }))
        }
        Command::Commutator { cocycle, n, k } => {
            let s = cocycle_of(cocycle)?;
            let f = s.field();
            let zero = LaurentElem::zero(f);
            let g = ExtElem::new(s.clone(), zero.clone(), LaurentElem::monomial(f, 1, *n))?;
            let h = ExtElem::new(s, zero, LaurentElem::monomial(f, 1, n + 2 * k))?;
            Outcome::Value(json!({"commutator": ext_value(&ext_commutator(&g, &h)?)}))
        }
        Command::Multiplier { spec, x, y } => {
            let m = multiplier_of(spec)?;
            let (x, y) = (series(x)?, series(y)?);
            Outcome::Value(json!({
                "omega": omega(&m, &x, &y)?.to_string(),
                "omega2": omega2(&m, &x, &y)?.to_string(),
                "omega2_closed_form": omega2_closed_form(&m, &x, &y)?.to_string(),
            }))
        }
        Command::SOmega { spec, x } => {
            let m = multiplier_of(spec)?;
            let x = series(x)?;
            Outcome::Value(json!({"in_s_omega": in_s_omega(&m, &x)?, "h_omega": text(&h_omega(&m, &x)?)}))
        }
        Command::Verdict { spec, depth } => {
            let m = multiplier_of(spec)?;
            Outcome::Value(serde_json::to_value(type_i_verdict(&m, *depth)?).expect("serializes"))
        }
        Command::Heis { g, h } => {
            let parse = |s: &str| -> Result<HeisElem, Error> {
                serde_json::from_value(json_arg(s)?).map_err(|e| Error::Schema(e.to_string()))
            };
            let (g, h) = (parse(g)?, parse(h)?);
            Outcome::Value(json!({"product": heis_mul(&g, &h)?, "inverse": heis_inv(&g)}))
        }
        Command::Orbit { index, query, xi, steps } => {
            let point = |s: &str| -> Result<NPoint, Error> {
                let v = json_arg(s)?;
                let p: NPoint = serde_json::from_value(v).map_err(|e| Error::Schema(e.to_string()))?;
                NPoint::new(p.upsilon, p.z)
            };
            let idx = point(index)?;
            let desc = orbit_description(&idx);
            let mut v = json!({"orbit": desc});
            if !xi.is_empty() {
                let xi = xi.iter().map(|s| series(s)).collect::<Result<Vec<_>, _>>()?;
                v["image"] = serde_json::to_value(heis_dual_action(&xi, &idx)?).expect("serializes");
            }
            if let Some(q) = query {
                v["membership"] = serde_json::to_value(orbit_membership(&desc, &point(q)?, *steps)?).expect("serializes");
            }
            Outcome::Value(v)
        }
        Command::Verify { suite, params, list } => {
            if *list {
                return Ok(Outcome::Value(json!({"suites": SUITES})));
            }
            let name = suite.as_deref().ok_or_else(|| Error::InvalidParams("name a suite or pass --list".into()))?;
            let params = params.as_deref().map(json_arg).transpose()?.unwrap_or(Value::Null);
            let report = run_suite(name, &params)?;
            let passed = report.passed;
            Outcome::Checked(serde_json::to_value(report).expect("serializes"), passed)
        }
    };
    Ok(out)
}

/// Echo of the command line arguments after the program name.
fn command_echo() -> Value {
    json!(std::env::args().skip(1).filter(|a| a != "--timing").collect::<Vec<_>>())
}

fn print_text(result: &Value, passed: Option<bool>) {
    match passed {
        None => match result.as_object() {
            Some(obj) => {
                for (k, v) in obj {
                    match v {
                        Value::String(s) => println!("{k}: {s}"),
                        other => println!("{k}: {other}"),
                    }
                }
            }
            None => println!("{result}"),
        },
        Some(ok) => {
            for c in result["checks"].as_array().into_iter().flatten() {
                let status = if c["passed"].as_bool() == Some(true) { "PASS" } else { "FAIL" };
                println!("{status} {} ({} cases)", c["name"].as_str().unwrap_or(""), c["cases"]);
                if let Some(ce) = c.get("counterexample") {
                    println!("     counterexample: {ce}");
                }
            }
            println!("{}: {}", result["suite"].as_str().unwrap_or(""), if ok { "passed" } else { "FAILED" });
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Err(e) = contracta::sweep::configure_from_env() {
        eprintln!("error: {e}");
        return ExitCode::from(2);
    }
    let start = Instant::now();
    let outcome = match execute(&cli.command) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let (result, passed) = match outcome {
        Outcome::Value(v) => (v, None),
        Outcome::Checked(v, ok) => (v, Some(ok)),
    };
    let mut report = json!({
        "schema_version": SCHEMA_VERSION,
        "command": command_echo(),
        "result": result,
    });
    if let Some(ok) = passed {
        report["passed"] = json!(ok);
    }
    if cli.timing {
        report["elapsed_ms"] = json!(start.elapsed().as_millis() as u64);
    }
    let rendered = serde_json::to_string_pretty(&report).expect("serializes");
    if let Some(path) = &cli.out {
        if let Err(e) = std::fs::write(path, format!("{rendered}\n")) {
            eprintln!("error: cannot write {}: {e}", path.display());
            return ExitCode::from(2);
        }
    }
    if cli.json {
        println!("{rendered}");
    } else {
        print_text(&report["result"], passed);
    }
    match passed {
        Some(false) => ExitCode::from(1),
        _ => ExitCode::SUCCESS,
    }
}
