//! Command line front end: evaluate, classify, measure, iterate, dualize,
//! list the catalog, and run the estimators over CSV data columns.
//!
//! Exit codes: 0 success, 1 a documented property was falsified, 2 domain
//! or data error, 64 usage error. All randomized commands take --seed and
//! default to 0; identical invocations produce byte-identical output.

mod csvio;

use std::io::Write;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};
use serde_json::json;

use quasimean::catalog::Catalog;
use quasimean::classify::{classify_full, ClassifyConfig, Expectation, VerdictStatus};
use quasimean::error::MeanError;
use quasimean::expr;
use quasimean::iterate::{self, IterateConfig};
use quasimean::mean::value_is_mean_like;
use quasimean::measures::{self, SearchConfig};
use quasimean::real::ExactDecimal;
use quasimean::tuple::{Arity, DomainBox, RealTuple};

const SCHEMA: &str = "quasimean/1";

#[derive(Parser)]
#[command(
    name = "quasimean",
    version,
    about = "Means, quasi-means and their perturbations"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct OutputArgs {
    /// Output format: json, csv or pretty.
    #[arg(long, default_value = "json")]
    format: String,
    /// Write the report to a file instead of stdout.
    #[arg(long)]
    out: Option<String>,
}

#[derive(Args, Clone)]
struct BoxArgs {
    /// Sampling interval as lo:hi (decimals).
    #[arg(long = "box")]
    box_: Option<String>,
    /// Tuple length; fixes the arity of sampled tuples.
    #[arg(long)]
    arity: Option<usize>,
}

#[derive(Subcommand)]
enum Command {
    /// List every registered function with its documented classification.
    Catalog {
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Evaluate a registered function at a tuple of decimals.
    Eval {
        /// Function id, e.g. floor-arith?m=0
        mean_id: String,
        /// Tuple entries as decimal strings.
        #[arg(required = true, allow_negative_numbers = true)]
        values: Vec<String>,
    },
    /// Run the property battery and the declared-vs-tested matrix.
    Classify {
        mean_id: String,
        #[command(flatten)]
        box_args: BoxArgs,
        #[arg(long, default_value_t = 10_000)]
        budget: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Estimate a distance-from-mean measure.
    Measure {
        /// One of: mdist, mdistp, mdista, a-quasi, m-quasi.
        measure: String,
        mean_id: String,
        #[command(flatten)]
        box_args: BoxArgs,
        /// Sample budget for the supremum searches.
        #[arg(long, default_value_t = 4_000)]
        budget: u64,
        /// Sample count for the volume estimate.
        #[arg(long, default_value_t = 1_000_000)]
        samples: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Run an iterative procedure and export its trace.
    Iterate {
        #[command(subcommand)]
        op: IterateOp,
    },
    /// Rewrite a formula through the addition/multiplication duality.
    Dualize {
        /// Formula text, e.g. "(a1 + a2) / 2".
        formula: String,
        /// Apply the evaluation-preserving simplifier to the dual.
        #[arg(long)]
        simplify: bool,
        /// Classify the dual as a mean on the sampling box.
        #[arg(long)]
        check_mean: bool,
        #[command(flatten)]
        box_args: BoxArgs,
        #[arg(long, default_value_t = 1_000)]
        budget: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Apply estimators to a numeric CSV column.
    Stats {
        csv_path: String,
        /// Column name in the header row.
        #[arg(long)]
        column: String,
        /// Comma-separated estimator ids; defaults to the standard five.
        #[arg(long, value_delimiter = ',')]
        estimators: Vec<String>,
        /// Truncation scale used by the floor estimator.
        #[arg(long, default_value_t = 0)]
        precision: i64,
        #[command(flatten)]
        output: OutputArgs,
    },
}

#[derive(Subcommand)]
enum IterateOp {
    /// Pairwise compounding of two functions from (a, b).
    Compound {
        #[arg(long)]
        k: String,
        #[arg(long)]
        m: String,
        #[arg(long, allow_negative_numbers = true)]
        a: String,
        #[arg(long, allow_negative_numbers = true)]
        b: String,
        #[arg(long, default_value_t = 1e-12)]
        tol: f64,
        #[arg(long, default_value_t = 10_000)]
        max_steps: usize,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// One-sided iteration of K(., b) to its fixed point.
    Closure {
        #[arg(long)]
        k: String,
        #[arg(long, allow_negative_numbers = true)]
        a: String,
        #[arg(long, allow_negative_numbers = true)]
        b: String,
        #[arg(long, default_value_t = 1e-12)]
        tol: f64,
        #[arg(long, default_value_t = 10_000)]
        max_steps: usize,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Pairwise 3-variable extension from (a, b, c).
    Extend3 {
        #[arg(long)]
        k: String,
        #[arg(long, allow_negative_numbers = true)]
        a: String,
        #[arg(long, allow_negative_numbers = true)]
        b: String,
        #[arg(long, allow_negative_numbers = true)]
        c: String,
        #[arg(long, default_value_t = 1e-12)]
        tol: f64,
        #[arg(long, default_value_t = 10_000)]
        max_steps: usize,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Smallest prefix where the n-1 divisor value enters the envelope.
    BesselOnset {
        /// Sequence entries as decimals; or use --csv with --column.
        #[arg(allow_negative_numbers = true)]
        values: Vec<String>,
        #[arg(long)]
        csv: Option<String>,
        #[arg(long)]
        column: Option<String>,
    },
}

enum AppError {
    Usage(String),
    Data(String),
}

impl From<MeanError> for AppError {
    fn from(e: MeanError) -> Self {
        match e {
            MeanError::Construction(_) | MeanError::Parse { .. } => AppError::Usage(e.to_string()),
            other => AppError::Data(other.to_string()),
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 64,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(AppError::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(64)
        }
        Err(AppError::Data(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn parse_box(spec: &str, arity: Arity) -> Result<DomainBox, AppError> {
    let (lo, hi) = spec
        .split_once(':')
        .ok_or_else(|| AppError::Usage(format!("--box wants lo:hi, got {spec:?}")))?;
    let lo: ExactDecimal = lo
        .parse()
        .map_err(|e: MeanError| AppError::Usage(e.to_string()))?;
    let hi: ExactDecimal = hi
        .parse()
        .map_err(|e: MeanError| AppError::Usage(e.to_string()))?;
    DomainBox::closed(lo, hi, arity).map_err(|e| AppError::Usage(e.to_string()))
}

fn resolve_box(entry_box: &DomainBox, args: &BoxArgs) -> Result<DomainBox, AppError> {
    let arity = match args.arity {
        Some(n) if n >= 1 => Arity::Fixed(n),
        Some(_) => return Err(AppError::Usage("--arity must be at least 1".into())),
        None => entry_box.arity,
    };
    match &args.box_ {
        Some(spec) => parse_box(spec, arity),
        None => {
            let mut b = entry_box.clone();
            b.arity = arity;
            Ok(b)
        }
    }
}

fn emit(output: &OutputArgs, body: &str) -> Result<(), AppError> {
    match &output.out {
        Some(path) => {
            let mut f = std::fs::File::create(path)
                .map_err(|e| AppError::Data(format!("cannot write {path}: {e}")))?;
            f.write_all(body.as_bytes())
                .and_then(|_| f.write_all(b"\n"))
                .map_err(|e| AppError::Data(format!("cannot write {path}: {e}")))
        }
        None => {
            println!("{body}");
            Ok(())
        }
    }
}

fn run(cli: Cli) -> Result<u8, AppError> {
    match cli.command {
        Command::Catalog { output } => {
            let listing = Catalog::standard().listing_json();
            let body = match output.format.as_str() {
                "pretty" => serde_json::to_string_pretty(&listing).expect("serializable"),
                _ => serde_json::to_string(&listing).expect("serializable"),
            };
            emit(&output, &body)?;
            Ok(0)
        }
        Command::Eval { mean_id, values } => {
            let entry = Catalog::construct(&mean_id)?;
            let strs: Vec<&str> = values.iter().map(String::as_str).collect();
            let t = RealTuple::parse(&strs).map_err(|e| AppError::Usage(e.to_string()))?;
            let v = entry.mean.eval(&t)?;
            println!("{}", v.render());
            Ok(0)
        }
        Command::Classify {
            mean_id,
            box_args,
            budget,
            seed,
            output,
        } => {
            let mut entry = Catalog::construct(&mean_id)?;
            entry.default_box = resolve_box(&entry.default_box, &box_args)?;
            let cfg = ClassifyConfig::new(budget, seed);
            let report = classify_full(&entry, &cfg);
            let falsified_declared = report
                .matrix
                .iter()
                .any(|r| r.expected == Expectation::Holds && r.status == VerdictStatus::Falsified);
            let body = match output.format.as_str() {
                "pretty" => {
                    let mut lines = vec![format!("{}  (budget {budget}, seed {seed})", report.id)];
                    for row in &report.matrix {
                        lines.push(format!(
                            "  {:?} expected {:?}: {:?}{}",
                            row.property,
                            row.expected,
                            row.status,
                            if row.detail.is_empty() {
                                String::new()
                            } else {
                                format!(" ({})", row.detail)
                            }
                        ));
                    }
                    lines.join("\n")
                }
                _ => serde_json::to_string(&report.to_json()).expect("serializable"),
            };
            emit(&output, &body)?;
            Ok(if falsified_declared { 1 } else { 0 })
        }
        Command::Measure {
            measure,
            mean_id,
            box_args,
            budget,
            samples,
            seed,
            output,
        } => {
            let entry = Catalog::construct(&mean_id)?;
            let box_ = resolve_box(&entry.default_box, &box_args)?;
            let cfg = SearchConfig::new(budget, seed);
            let result = match measure.as_str() {
                "mdist" => serde_json::to_value(measures::mdist(&entry.mean, &box_, &cfg)?),
                "mdistp" => serde_json::to_value(measures::mdistp(&entry.mean, &box_, &cfg)?),
                "a-quasi" => {
                    serde_json::to_value(measures::a_quasi_constant(&entry.mean, &box_, &cfg)?)
                }
                "m-quasi" => {
                    serde_json::to_value(measures::m_quasi_constant(&entry.mean, &box_, &cfg)?)
                }
                "mdista" => {
                    let mut b = box_.clone();
                    if matches!(b.arity, Arity::Variadic { .. }) {
                        b.arity = Arity::Fixed(2);
                    }
                    serde_json::to_value(measures::mdista(&entry.mean, &b, samples, seed)?)
                }
                other => {
                    return Err(AppError::Usage(format!(
                    "unknown measure {other:?}; expected mdist, mdistp, mdista, a-quasi or m-quasi"
                )))
                }
            }
            .expect("serializable");
            let envelope = json!({
                "schema": SCHEMA,
                "command": "measure",
                "mean": entry.id,
                "box": box_.describe(),
                "result": result,
            });
            let body = match output.format.as_str() {
                "pretty" => serde_json::to_string_pretty(&envelope).expect("serializable"),
                _ => serde_json::to_string(&envelope).expect("serializable"),
            };
            emit(&output, &body)?;
            Ok(0)
        }
        Command::Iterate { op } => run_iterate(op),
        Command::Dualize {
            formula,
            simplify,
            check_mean,
            box_args,
            budget,
            seed,
            output,
        } => {
            let parsed = expr::parse(&formula)?;
            let mut dual = expr::dualize(&parsed);
            if simplify {
                dual = expr::simplify(&dual);
            }
            let mut envelope = json!({
                "schema": SCHEMA,
                "command": "dualize",
                "input": formula,
                "dual": expr::render(&dual),
                "ast": expr::to_json(&dual),
            });
            if check_mean {
                let arity = dual.arity().max(parsed.arity());
                let default_box = DomainBox::closed_str("0.5", "3", Arity::Fixed(arity.max(2)));
                let box_ = resolve_box(&default_box, &box_args)?;
                let k = expr::as_mean_function(&dual, &box_)?;
                let cfg = ClassifyConfig::new(budget, seed);
                let verdict = quasimean::classify::check_mean(&k, &box_, &cfg);
                envelope["mean_check"] = serde_json::to_value(&verdict).expect("serializable");
            }
            let body = match output.format.as_str() {
                "pretty" => {
                    let mut s = format!("dual: {}", expr::render(&dual));
                    if let Some(check) = envelope.get("mean_check") {
                        s.push_str(&format!("\nmean-check: {}", check["status"]));
                    }
                    s
                }
                _ => serde_json::to_string(&envelope).expect("serializable"),
            };
            emit(&output, &body)?;
            Ok(0)
        }
        Command::Stats {
            csv_path,
            column,
            estimators,
            precision,
            output,
        } => {
            let data = csvio::read_column(&csv_path, &column).map_err(|e| match e {
                csvio::CsvError::UnknownColumn(_) | csvio::CsvError::MissingHeader => {
                    AppError::Usage(e.to_string())
                }
                other => AppError::Data(other.to_string()),
            })?;
            if data.len() < 2 {
                return Err(AppError::Data(
                    "the column needs at least two values".into(),
                ));
            }
            let t = RealTuple::from_decimals(&data).map_err(|e| AppError::Data(e.to_string()))?;
            let ids: Vec<String> = if estimators.is_empty() {
                vec![
                    "bessel-plus".into(),
                    "trimmed-k1".into(),
                    "trimmed-k2".into(),
                    "trimmed-k3".into(),
                    format!("floor-arith?m={precision}"),
                ]
            } else {
                estimators
                    .iter()
                    .map(|e| {
                        if e == "floor-arith" {
                            format!("floor-arith?m={precision}")
                        } else {
                            e.clone()
                        }
                    })
                    .collect()
            };
            let lo = t.min_value();
            let hi = t.max_value();
            let mut rows = Vec::new();
            for id in &ids {
                let entry = Catalog::construct(id)?;
                let row = match entry.mean.eval(&t) {
                    Ok(v) => {
                        let mean_like = value_is_mean_like(&v, &t);
                        json!({
                            "estimator": entry.id,
                            "value": v.render(),
                            "mean_like": mean_like,
                        })
                    }
                    Err(e) => json!({
                        "estimator": entry.id,
                        "error": e.to_string(),
                    }),
                };
                rows.push(row);
            }
            // Smallest truncation scale guaranteed to stay mean-like for
            // this column's spread.
            let spread = hi.sub(&lo).to_f64();
            let guaranteed_m = if spread > 0.0 {
                Some(((t.len() as f64 / spread).log10() + 1.0).floor() as i64 + 1)
            } else {
                None
            };
            let envelope = json!({
                "schema": SCHEMA,
                "command": "stats",
                "column": column,
                "n": t.len(),
                "min": lo.render_plain(),
                "max": hi.render_plain(),
                "guaranteed_mean_like_scale": guaranteed_m,
                "rows": rows,
            });
            let body = match output.format.as_str() {
                "pretty" => {
                    let mut lines = vec![format!(
                        "column {column}: n = {}, min = {}, max = {}",
                        t.len(),
                        lo.render_plain(),
                        hi.render_plain()
                    )];
                    for r in &rows {
                        lines.push(format!(
                            "  {} = {} mean-like: {}",
                            r["estimator"].as_str().unwrap_or("?"),
                            r["value"].as_str().unwrap_or("error"),
                            r["mean_like"]
                        ));
                    }
                    lines.join("\n")
                }
                "csv" => {
                    let mut s = String::from("estimator,value,mean_like");
                    for r in &rows {
                        s.push_str(&format!(
                            "\n{},{},{}",
                            r["estimator"].as_str().unwrap_or("?"),
                            r["value"].as_str().unwrap_or(""),
                            r["mean_like"]
                        ));
                    }
                    s
                }
                _ => serde_json::to_string(&envelope).expect("serializable"),
            };
            emit(&output, &body)?;
            Ok(0)
        }
    }
}

fn parse_decimal(s: &str) -> Result<ExactDecimal, AppError> {
    s.parse()
        .map_err(|e: MeanError| AppError::Usage(e.to_string()))
}

fn run_iterate(op: IterateOp) -> Result<u8, AppError> {
    match op {
        IterateOp::Compound {
            k,
            m,
            a,
            b,
            tol,
            max_steps,
            output,
        } => {
            let kf = Catalog::construct(&k)?.mean;
            let mf = Catalog::construct(&m)?.mean;
            let cfg = IterateConfig {
                tol,
                max_steps,
                ..Default::default()
            };
            let tr = iterate::compound(&kf, &mf, &parse_decimal(&a)?, &parse_decimal(&b)?, &cfg)?;
            emit_trace(&output, &tr)
        }
        IterateOp::Closure {
            k,
            a,
            b,
            tol,
            max_steps,
            output,
        } => {
            let kf = Catalog::construct(&k)?.mean;
            let cfg = IterateConfig {
                tol,
                max_steps,
                ..Default::default()
            };
            let tr =
                iterate::idempotent_closure(&kf, &parse_decimal(&a)?, &parse_decimal(&b)?, &cfg)?;
            emit_trace(&output, &tr)
        }
        IterateOp::Extend3 {
            k,
            a,
            b,
            c,
            tol,
            max_steps,
            output,
        } => {
            let kf = Catalog::construct(&k)?.mean;
            let cfg = IterateConfig {
                tol,
                max_steps,
                ..Default::default()
            };
            let tr = iterate::extend3(
                &kf,
                &parse_decimal(&a)?,
                &parse_decimal(&b)?,
                &parse_decimal(&c)?,
                &cfg,
            )?;
            emit_trace(&output, &tr)
        }
        IterateOp::BesselOnset {
            values,
            csv,
            column,
        } => {
            let seq: Vec<ExactDecimal> = match (csv, column) {
                (Some(path), Some(col)) => {
                    csvio::read_column(&path, &col).map_err(|e| match e {
                        csvio::CsvError::UnknownColumn(_) | csvio::CsvError::MissingHeader => {
                            AppError::Usage(e.to_string())
                        }
                        other => AppError::Data(other.to_string()),
                    })?
                }
                (None, None) if !values.is_empty() => values
                    .iter()
                    .map(|v| parse_decimal(v))
                    .collect::<Result<_, _>>()?,
                _ => {
                    return Err(AppError::Usage(
                        "give sequence values inline, or both --csv and --column".into(),
                    ))
                }
            };
            let onset = iterate::bessel_onset(&seq, true)?;
            let body = serde_json::to_string(&json!({
                "schema": SCHEMA,
                "command": "bessel-onset",
                "checked": seq.len(),
                "onset": onset,
            }))
            .expect("serializable");
            println!("{body}");
            Ok(0)
        }
    }
}

fn emit_trace(output: &OutputArgs, tr: &iterate::IterationTrace) -> Result<u8, AppError> {
    let verdict = serde_json::to_string(&tr.verdict_json()).expect("serializable");
    match (&output.out, output.format.as_str()) {
        (Some(path), _) => {
            let mut f = std::fs::File::create(path)
                .map_err(|e| AppError::Data(format!("cannot write {path}: {e}")))?;
            f.write_all(tr.to_csv().as_bytes())
                .and_then(|_| f.write_all(b"\n"))
                .map_err(|e| AppError::Data(format!("cannot write {path}: {e}")))?;
            println!("{verdict}");
        }
        (None, "csv") => {
            println!("{}", tr.to_csv());
        }
        (None, _) => {
            println!("{}", tr.to_csv());
            println!("{verdict}");
        }
    }
    Ok(0)
}
