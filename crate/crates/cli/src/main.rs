//! Command line interface for the fat point calculator.
//!
//! Exit codes: 0 on success, 1 for input errors (bad flags, malformed
//! classes, unsupported point counts), 2 when an internal invariant breaks.

use std::io::BufRead;
use std::panic::{catch_unwind, AssertUnwindSafe};

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Deserialize;
use serde_json::{json, Value};

use fatpoints::cohom::{chi, h0, h1, h2, is_ample, is_nef, nef_classes_sorted};
use fatpoints::mu::{fast_mu_nef7, lambda_prime, mu_dims, perpendicular_cubic_count};
use fatpoints::oracle::{self, OracleConfig};
use fatpoints::resolution::FatPointScheme;
use fatpoints::{DivisorClass, Error};

#[derive(Parser)]
#[command(
    name = "fatpoints",
    version,
    about = "Cohomology, multiplication maps, and minimal free resolutions \
             for fat points at general points of the plane"
)]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Dimension of the space of global sections of a divisor class.
    H0(ClassArg),
    /// Dimension of the first cohomology of a divisor class.
    H1(ClassArg),
    /// Dimension of the second cohomology of a divisor class.
    H2(ClassArg),
    /// Euler characteristic of a divisor class.
    Chi(ClassArg),
    /// Whether the class meets every curve on the surface nonnegatively.
    Nef(ClassArg),
    /// Whether the class is ample (at most seven points).
    Ample(ClassArg),
    /// Kernel and cokernel of multiplication by the linear forms.
    Mu(ClassArg),
    /// Minimal free resolution of a fat point ideal.
    Resolve(SchemeArgs),
    /// Independent finite-field measurement of the same resolution data.
    Oracle(OracleArgs),
    /// Scan nef classes at seven points for maximal rank failures.
    Sweep(SweepArgs),
    /// Run one JSON request per stdin line, emitting one JSON result per
    /// line (ignores --format).
    Batch,
}

#[derive(Args)]
struct ClassArg {
    /// Divisor class "d;m1,...,mr" (degree d, multiplicities m_i).
    #[arg(long, value_parser = parse_class, allow_hyphen_values = true)]
    class: DivisorClass,
}

#[derive(Args)]
struct SchemeArgs {
    /// Number of points.
    #[arg(short = 'r', long)]
    points: usize,
    /// Multiplicities m1,...,mr.
    #[arg(
        short = 'm',
        long,
        value_delimiter = ',',
        allow_negative_numbers = true
    )]
    mults: Vec<i64>,
    /// Extend the reported Hilbert table up to this degree.
    #[arg(short = 't', long)]
    t_max: Option<i64>,
}

#[derive(Args)]
struct OracleArgs {
    #[command(flatten)]
    scheme: SchemeArgs,
    /// Field modulus (prime).
    #[arg(long)]
    prime: Option<u64>,
    /// Seed for the random point configurations.
    #[arg(long)]
    seed: Option<u64>,
    /// Number of independent trials.
    #[arg(long)]
    trials: Option<usize>,
}

#[derive(Args)]
struct SweepArgs {
    /// Largest degree to enumerate.
    #[arg(long)]
    max_degree: i64,
}

fn parse_class(s: &str) -> Result<DivisorClass, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn main() {
    let code = catch_unwind(real_main).unwrap_or(2);
    std::process::exit(code);
}

fn real_main() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            return code;
        }
    };
    match run(cli) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            if e.is_input_error() {
                1
            } else {
                2
            }
        }
    }
}

fn run(cli: Cli) -> fatpoints::Result<()> {
    let format = cli.format;
    match cli.command {
        Command::H0(arg) => emit_value(format, &arg.class, "h0", h0(&arg.class).into()),
        Command::H1(arg) => emit_value(format, &arg.class, "h1", h1(&arg.class).into()),
        Command::H2(arg) => emit_value(format, &arg.class, "h2", h2(&arg.class).into()),
        Command::Chi(arg) => emit_value(format, &arg.class, "chi", chi(&arg.class).into()),
        Command::Nef(arg) => emit_value(format, &arg.class, "nef", is_nef(&arg.class).into()),
        Command::Ample(arg) => {
            let value = is_ample(&arg.class)?;
            emit_value(format, &arg.class, "ample", value.into())
        }
        Command::Mu(arg) => {
            let report = mu_dims(&arg.class)?;
            match format {
                Format::Json => println!("{}", serde_json::to_string(&report).expect("serializable")),
                Format::Text => {
                    println!("class: {}", report.class);
                    println!("h0: {}  h0 shifted: {}", report.h0, report.h0_shifted);
                    println!("ker: {}  cok: {}", report.ker, report.cok);
                    println!(
                        "lambda': {}  lambda: {}",
                        report.lambda_prime, report.lambda
                    );
                    if let Some(t) = report.perpendicular_cubics {
                        println!("perpendicular cubics: {t}");
                    }
                    println!("maximal rank: {}", report.maximal_rank);
                }
            }
            Ok(())
        }
        Command::Resolve(args) => {
            let scheme = scheme_from(&args)?;
            let mut summary = scheme.resolve()?;
            if let Some(t_max) = args.t_max {
                summary.hilbert = (0..=t_max.max(summary.beta + 2))
                    .map(|t| (t, scheme.hilbert(t)))
                    .collect();
            }
            match format {
                Format::Json => println!("{}", serde_json::to_string(&summary).expect("serializable")),
                Format::Text => {
                    println!("scheme: {} ({} points)", join(&summary.mults), summary.r);
                    println!("alpha: {}", summary.alpha);
                    println!("beta: {}", summary.beta);
                    let dims: Vec<String> =
                        summary.hilbert.values().map(|v| v.to_string()).collect();
                    let last = summary.hilbert.keys().last().copied().unwrap_or(0);
                    println!("hilbert 0..={last}: {}", dims.join(" "));
                    println!("generators: {}", degree_counts(&summary.generators));
                    println!("syzygies: {}", degree_counts(&summary.syzygies));
                    println!("resolution: {}", summary.display);
                }
            }
            Ok(())
        }
        Command::Oracle(args) => {
            check_points(args.scheme.points, &args.scheme.mults)?;
            let cfg = oracle_config(&args);
            let report = oracle::resolve(&args.scheme.mults, args.scheme.t_max, &cfg)?;
            match format {
                Format::Json => println!("{}", serde_json::to_string(&report).expect("serializable")),
                Format::Text => {
                    println!(
                        "scheme: {} ({} points)",
                        join(&report.mults),
                        report.mults.len()
                    );
                    println!(
                        "prime: {}  seed: {}  trials: {}",
                        report.prime, report.seed, report.trials
                    );
                    println!("alpha: {}", report.alpha);
                    println!("beta: {}", report.beta);
                    let dims: Vec<String> =
                        report.ideal_dims.values().map(|v| v.to_string()).collect();
                    let last = report.ideal_dims.keys().last().copied().unwrap_or(0);
                    println!("ideal dims 0..={last}: {}", dims.join(" "));
                    println!("generators: {}", degree_counts(&report.generators));
                    println!("syzygies: {}", degree_counts(&report.syzygies));
                    println!("resolution: {}", report.display);
                    match report.disagreements.is_empty() {
                        true => println!("disagreements: none"),
                        false => {
                            for d in &report.disagreements {
                                println!("disagreement: {d}");
                            }
                        }
                    }
                }
            }
            Ok(())
        }
        Command::Sweep(args) => sweep(format, args.max_degree),
        Command::Batch => batch(),
    }
}

fn scheme_from(args: &SchemeArgs) -> fatpoints::Result<FatPointScheme> {
    check_points(args.points, &args.mults)?;
    FatPointScheme::new(args.mults.clone())
}

fn check_points(points: usize, mults: &[i64]) -> fatpoints::Result<()> {
    if points != mults.len() {
        return Err(Error::Precondition {
            operation: "command line",
            reason: format!(
                "-r says {points} points but -m lists {} multiplicities",
                mults.len()
            ),
        });
    }
    Ok(())
}

fn oracle_config(args: &OracleArgs) -> OracleConfig {
    let defaults = OracleConfig::default();
    OracleConfig {
        prime: args.prime.unwrap_or(defaults.prime),
        seed: args.seed.unwrap_or(defaults.seed),
        trials: args.trials.unwrap_or(defaults.trials),
    }
}

fn emit_value(
    format: Format,
    class: &DivisorClass,
    key: &str,
    value: Value,
) -> fatpoints::Result<()> {
    match format {
        Format::Text => println!("{}", render_plain(&value)),
        Format::Json => println!("{}", json!({ "class": class.to_string(), key: value })),
    }
    Ok(())
}

fn render_plain(value: &Value) -> String {
    match value {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

fn join(mults: &[i64]) -> String {
    let parts: Vec<String> = mults.iter().map(|m| m.to_string()).collect();
    parts.join(",")
}

fn degree_counts(map: &std::collections::BTreeMap<i64, u64>) -> String {
    if map.is_empty() {
        return "none".to_string();
    }
    let parts: Vec<String> = map
        .iter()
        .map(|(t, n)| format!("{n} in degree {t}"))
        .collect();
    parts.join(", ")
}

fn sweep(format: Format, max_degree: i64) -> fatpoints::Result<()> {
    let classes = nef_classes_sorted(7, max_degree)?;
    let mut failures = Vec::new();
    for f in &classes {
        let (ker, cok) = fast_mu_nef7(f)?;
        if ker > 0 && cok > 0 {
            failures.push(json!({
                "class": f.to_string(),
                "ker": ker,
                "cok": cok,
                "perpendicular_cubics": perpendicular_cubic_count(f)?,
                "lambda": lambda_prime(f).max(0),
            }));
        }
    }
    match format {
        Format::Json => println!(
            "{}",
            json!({
                "max_degree": max_degree,
                "classes": classes.len(),
                "failures": failures,
            })
        ),
        Format::Text => {
            println!(
                "nef classes of degree <= {max_degree} at seven points \
                 (nonincreasing multiplicities): {}",
                classes.len()
            );
            println!("maximal rank failures: {}", failures.len());
            for f in &failures {
                println!(
                    "  {}  ker={} cok={} cubics={} lambda={}",
                    f["class"].as_str().expect("class is a string"),
                    f["ker"],
                    f["cok"],
                    f["perpendicular_cubics"],
                    f["lambda"]
                );
            }
        }
    }
    Ok(())
}

/// One request per line, e.g. `{"op":"h0","class":"3;1,1,1"}` or
/// `{"op":"oracle","mults":[2,2],"trials":3}`.
#[derive(Deserialize)]
#[serde(tag = "op", rename_all = "snake_case", deny_unknown_fields)]
enum BatchRequest {
    H0 { class: DivisorClass },
    H1 { class: DivisorClass },
    H2 { class: DivisorClass },
    Chi { class: DivisorClass },
    Nef { class: DivisorClass },
    Ample { class: DivisorClass },
    Mu { class: DivisorClass },
    Resolve {
        mults: Vec<i64>,
    },
    Oracle {
        mults: Vec<i64>,
        #[serde(default)]
        t_max: Option<i64>,
        #[serde(default)]
        prime: Option<u64>,
        #[serde(default)]
        seed: Option<u64>,
        #[serde(default)]
        trials: Option<usize>,
    },
}

fn batch() -> fatpoints::Result<()> {
    let stdin = std::io::stdin();
    for line in stdin.lock().lines() {
        let line = line.map_err(|e| Error::Parse {
            input: "stdin".to_string(),
            reason: e.to_string(),
        })?;
        if line.trim().is_empty() {
            continue;
        }
        let outcome = catch_unwind(AssertUnwindSafe(|| batch_line(&line)));
        let value = match outcome {
            Ok(Ok(mut payload)) => {
                payload["ok"] = json!(true);
                payload
            }
            Ok(Err(e)) => json!({ "ok": false, "error": e.to_string() }),
            Err(_) => json!({ "ok": false, "error": "internal invariant violated" }),
        };
        println!("{value}");
    }
    Ok(())
}

fn batch_line(line: &str) -> fatpoints::Result<Value> {
    let request: BatchRequest = serde_json::from_str(line).map_err(|e| Error::Parse {
        input: line.to_string(),
        reason: e.to_string(),
    })?;
    let payload = match request {
        BatchRequest::H0 { class } => json!({ "class": class.to_string(), "h0": h0(&class) }),
        BatchRequest::H1 { class } => json!({ "class": class.to_string(), "h1": h1(&class) }),
        BatchRequest::H2 { class } => json!({ "class": class.to_string(), "h2": h2(&class) }),
        BatchRequest::Chi { class } => json!({ "class": class.to_string(), "chi": chi(&class) }),
        BatchRequest::Nef { class } => {
            json!({ "class": class.to_string(), "nef": is_nef(&class) })
        }
        BatchRequest::Ample { class } => {
            json!({ "class": class.to_string(), "ample": is_ample(&class)? })
        }
        BatchRequest::Mu { class } => {
            serde_json::to_value(mu_dims(&class)?).expect("serializable")
        }
        BatchRequest::Resolve { mults } => {
            let summary = FatPointScheme::new(mults)?.resolve()?;
            serde_json::to_value(summary).expect("serializable")
        }
        BatchRequest::Oracle {
            mults,
            t_max,
            prime,
            seed,
            trials,
        } => {
            let defaults = OracleConfig::default();
            let cfg = OracleConfig {
                prime: prime.unwrap_or(defaults.prime),
                seed: seed.unwrap_or(defaults.seed),
                trials: trials.unwrap_or(defaults.trials),
            };
            serde_json::to_value(oracle::resolve(&mults, t_max, &cfg)?).expect("serializable")
        }
    };
    Ok(payload)
}
