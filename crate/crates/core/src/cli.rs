//! Command-line front end.
//!
//! Exit codes: 0 success, 1 internal error, 2 bad input (one-line diagnostic
//! on stderr), 3 inconclusive result or resource limit (partial JSON report
//! on stdout).

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};

use crate::error::Error;
use crate::oracle;
use crate::quiver::{parse_quiver, DimVector, Quiver};
use crate::roots::base_roots;
use crate::slope_set::{
    compute_slope_set_with, mu_delta_and_case, MuDeltaCase, SlopeSetOptions, SlopeSetReport,
    Verdict, DEFAULT_BOUND, DEFAULT_FAMILY_PREVIEW,
};
use crate::stability::{SubdimCache, Weight};
use crate::tubes::tube_system;

#[derive(Debug, Parser)]
#[command(
    name = "qstab",
    version,
    about = "Exact slope stability for quiver representations"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Debug, Args)]
struct Common {
    /// Quiver document (JSON).
    #[arg(short = 'q', long = "quiver")]
    quiver: PathBuf,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Type, δ and Euler matrix of a quiver.
    Info {
        #[command(flatten)]
        common: Common,
    },
    /// Real roots below δ, split by class.
    Roots {
        #[command(flatten)]
        common: Common,
    },
    /// Non-homogeneous tubes.
    Tubes {
        #[command(flatten)]
        common: Common,
    },
    /// Semistability of the general representation of a Schur root.
    Semistable {
        #[command(flatten)]
        common: Common,
        /// Weight, comma-separated integers.
        #[arg(short = 'w', long = "weight", allow_hyphen_values = true)]
        weight: String,
        /// Dimension vector, comma-separated nonnegative integers.
        #[arg(short = 'd', long = "dim")]
        dim: String,
    },
    /// The set of slopes of semistable representations.
    Slopes {
        #[command(flatten)]
        common: Common,
        #[arg(short = 'w', long = "weight", allow_hyphen_values = true)]
        weight: String,
        /// Ladder levels explored before giving up.
        #[arg(long, default_value_t = DEFAULT_BOUND, value_parser = clap::value_parser!(u32).range(1..))]
        bound: u32,
        /// Family members listed in an infinite verdict.
        #[arg(long, default_value_t = DEFAULT_FAMILY_PREVIEW)]
        count: usize,
    },
    /// Which case the semistables of slope μ(δ) fall into.
    Classify {
        #[command(flatten)]
        common: Common,
        #[arg(short = 'w', long = "weight", allow_hyphen_values = true)]
        weight: String,
        #[arg(long, default_value_t = DEFAULT_BOUND, value_parser = clap::value_parser!(u32).range(1..))]
        bound: u32,
    },
    /// Brute-force subrepresentations of a certified general representation.
    Oracle {
        #[command(flatten)]
        common: Common,
        #[arg(short = 'd', long = "dim")]
        dim: String,
        #[arg(short = 'w', long = "weight", allow_hyphen_values = true)]
        weight: Option<String>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Prime field, 2 or 3.
        #[arg(long, default_value_t = 2)]
        field: u64,
        #[arg(long, default_value_t = 1000)]
        attempts: usize,
    },
}

/// Outcome of a subcommand: a report and its exit code.
struct Outcome {
    report: Value,
    code: i32,
}

impl Outcome {
    fn ok(report: Value) -> Self {
        Outcome { report, code: 0 }
    }
}

/// Runs the CLI on `args` (including the program name) and returns the exit
/// code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = write!(out, "{e}");
                return 0;
            }
            let text = e.to_string();
            let line = text
                .lines()
                .find(|l| !l.trim().is_empty())
                .unwrap_or("invalid arguments");
            let _ = writeln!(err, "{}", line.trim());
            return 2;
        }
    };
    let format = cli.command.common().format;
    match execute(&cli.command) {
        Ok(outcome) => {
            let _ = out.write_all(render(&cli.command, &outcome.report, format).as_bytes());
            outcome.code
        }
        Err(Error::ResourceLimit(msg)) => {
            let report = json!({ "verdict": "resource_limit", "error": msg });
            let _ = writeln!(
                out,
                "{}",
                serde_json::to_string(&report).expect("json values serialize")
            );
            let _ = writeln!(err, "error: resource limit exceeded: {msg}");
            3
        }
        Err(e @ Error::InternalInconsistency(_)) => {
            let _ = writeln!(err, "error: {e}");
            1
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            2
        }
    }
}

impl Command {
    fn common(&self) -> &Common {
        match self {
            Command::Info { common }
            | Command::Roots { common }
            | Command::Tubes { common }
            | Command::Semistable { common, .. }
            | Command::Slopes { common, .. }
            | Command::Classify { common, .. }
            | Command::Oracle { common, .. } => common,
        }
    }
}

fn parse_list(text: &str, what: &str) -> crate::Result<Vec<i64>> {
    text.split(',')
        .map(|s| {
            s.trim().parse::<i64>().map_err(|_| {
                Error::MalformedInput(format!("{what} entry {:?} is not an integer", s.trim()))
            })
        })
        .collect()
}

fn parse_weight(q: &Quiver, text: &str) -> crate::Result<Weight> {
    let w = parse_list(text, "weight")?;
    if w.len() != q.vertex_count() {
        return Err(Error::DimensionMismatch {
            expected: q.vertex_count(),
            got: w.len(),
        });
    }
    Ok(Weight::new(w))
}

fn parse_dim(q: &Quiver, text: &str) -> crate::Result<DimVector> {
    let d = parse_list(text, "dimension")?;
    if d.len() != q.vertex_count() {
        return Err(Error::DimensionMismatch {
            expected: q.vertex_count(),
            got: d.len(),
        });
    }
    if d.iter().any(|&x| x < 0) {
        return Err(Error::NegativeEntry);
    }
    Ok(DimVector::new(d))
}

fn load(common: &Common) -> crate::Result<Quiver> {
    let text = std::fs::read_to_string(&common.quiver).map_err(|e| {
        Error::MalformedInput(format!("cannot read {}: {e}", common.quiver.display()))
    })?;
    parse_quiver(&text)
}

fn to_value<T: serde::Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("report types serialize")
}

fn execute(command: &Command) -> crate::Result<Outcome> {
    let q = load(command.common())?;
    match command {
        Command::Info { .. } => {
            let kind = q.classify_type()?;
            let mut m = Map::new();
            m.insert("vertices".into(), to_value(&q.vertices()));
            m.insert("arrows".into(), to_value(&q.to_document().arrows));
            m.insert("type".into(), Value::String(kind.to_string()));
            if kind.is_euclidean() {
                m.insert("delta".into(), to_value(&q.minimal_imaginary_root()?));
            }
            m.insert("euler_matrix".into(), to_value(&q.euler_matrix().rows()));
            Ok(Outcome::ok(Value::Object(m)))
        }
        Command::Roots { .. } => {
            require_euclidean(&q)?;
            Ok(Outcome::ok(to_value(&base_roots(&q)?)))
        }
        Command::Tubes { .. } => {
            require_euclidean(&q)?;
            Ok(Outcome::ok(to_value(&tube_system(&q)?)))
        }
        Command::Semistable { weight, dim, .. } => {
            let theta = parse_weight(&q, weight)?;
            let d = parse_dim(&q, dim)?;
            let v = SubdimCache::new(&q).verdict(&theta, &d)?;
            Ok(Outcome::ok(to_value(&v)))
        }
        Command::Slopes {
            weight,
            bound,
            count,
            ..
        } => {
            let theta = parse_weight(&q, weight)?;
            let options = SlopeSetOptions {
                bound: *bound,
                family_preview: *count,
                ..SlopeSetOptions::default()
            };
            let report = compute_slope_set_with(&q, &theta, &options)?;
            let code = if matches!(report.verdict, Verdict::Inconclusive { .. }) {
                3
            } else {
                0
            };
            Ok(Outcome {
                report: report_json(&report),
                code,
            })
        }
        Command::Classify { weight, bound, .. } => {
            let theta = parse_weight(&q, weight)?;
            let (mu_delta, case) = mu_delta_and_case(&q, &theta, *bound)?;
            let x_theta = match case {
                MuDeltaCase::DynkinCategory | MuDeltaCase::TameCategory => "finite",
                MuDeltaCase::RegularCategory => "infinite",
                MuDeltaCase::Inconclusive(_) => "undetermined",
            };
            let mut m = Map::new();
            m.insert("case".into(), to_value(&case));
            m.insert("x_theta".into(), Value::String(x_theta.into()));
            m.insert("mu_delta".into(), to_value(&mu_delta));
            if let MuDeltaCase::Inconclusive(b) = case {
                m.insert("bound".into(), json!(b));
            }
            let code = if matches!(case, MuDeltaCase::Inconclusive(_)) {
                3
            } else {
                0
            };
            Ok(Outcome {
                report: Value::Object(m),
                code,
            })
        }
        Command::Oracle {
            dim,
            weight,
            seed,
            field,
            attempts,
            ..
        } => {
            let d = parse_dim(&q, dim)?;
            let theta = weight.as_deref().map(|w| parse_weight(&q, w)).transpose()?;
            if !oracle::BRUTEFORCE_FIELDS.contains(field) {
                return Err(Error::MalformedInput(format!(
                    "field must be 2 or 3, got {field}"
                )));
            }
            if d.total() > oracle::MAX_BRUTEFORCE_TOTAL {
                return Err(Error::ResourceLimit(format!(
                    "total dimension {} exceeds {}",
                    d.total(),
                    oracle::MAX_BRUTEFORCE_TOTAL
                )));
            }
            let rep = oracle::verify_generic(&q, &d, *field, *attempts, *seed)?;
            let mut m = Map::new();
            m.insert("dim".into(), to_value(&d));
            m.insert("field".into(), json!(field));
            m.insert("seed".into(), json!(seed));
            m.insert("matrices".into(), to_value(&rep.matrices()));
            m.insert(
                "subdims".into(),
                to_value(&oracle::subdims_bruteforce(&rep)?),
            );
            if let Some(theta) = theta {
                if !d.is_zero() {
                    m.insert(
                        "verdict".into(),
                        to_value(&oracle::semistable_bruteforce(&rep, &theta)?),
                    );
                }
            }
            Ok(Outcome::ok(Value::Object(m)))
        }
    }
}

fn require_euclidean(q: &Quiver) -> crate::Result<()> {
    let kind = q.classify_type()?;
    if kind.is_euclidean() {
        Ok(())
    } else {
        Err(Error::NotTame(kind.to_string()))
    }
}

/// JSON form of a slope-set report.
pub fn report_json(report: &SlopeSetReport) -> Value {
    let mut m = Map::new();
    m.insert("mu_delta".into(), to_value(&report.mu_delta));
    m.insert("case".into(), to_value(&report.case));
    match &report.verdict {
        Verdict::Finite { slopes, witnesses } => {
            m.insert("verdict".into(), json!("finite"));
            m.insert("slopes".into(), to_value(slopes));
            m.insert("witnesses".into(), to_value(witnesses));
        }
        Verdict::Infinite {
            family_base,
            members,
        } => {
            m.insert("verdict".into(), json!("infinite"));
            m.insert("family_base".into(), to_value(family_base));
            m.insert(
                "family_dims".into(),
                to_value(&members.iter().map(|(d, _)| d).collect::<Vec<_>>()),
            );
            m.insert(
                "family_slopes".into(),
                to_value(&members.iter().map(|(_, s)| s).collect::<Vec<_>>()),
            );
        }
        Verdict::Inconclusive {
            bound,
            slopes,
            witnesses,
        } => {
            m.insert("verdict".into(), json!("inconclusive"));
            m.insert("bound".into(), json!(bound));
            m.insert("slopes".into(), to_value(slopes));
            m.insert("witnesses".into(), to_value(witnesses));
        }
    }
    m.insert("certificates".into(), to_value(&report.certificates));
    Value::Object(m)
}

fn render(command: &Command, report: &Value, format: Format) -> String {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string(report).expect("json values serialize");
            s.push('\n');
            s
        }
        Format::Text => {
            let mut s = String::new();
            if let Command::Classify { .. } = command {
                let case = report["case"].as_str().unwrap_or_default();
                let x = report["x_theta"].as_str().unwrap_or_default();
                s.push_str(&format!("{case}; X_θ {x}\n"));
                s.push_str(&format!(
                    "mu_delta: {}\n",
                    report["mu_delta"].as_str().unwrap_or_default()
                ));
                if let Some(b) = report.get("bound") {
                    s.push_str(&format!("bound: {b}\n"));
                }
                return s;
            }
            render_text(report, "", &mut s);
            s
        }
    }
}

fn is_flat(v: &Value) -> bool {
    match v {
        Value::Array(xs) => xs.iter().all(|x| !x.is_object() && is_flat(x)),
        Value::Object(_) => false,
        _ => true,
    }
}

fn scalar_text(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

/// `key: value` lines; nested keys joined with dots, list items indexed.
fn render_text(v: &Value, prefix: &str, out: &mut String) {
    let join = |k: &str| {
        if prefix.is_empty() {
            k.to_string()
        } else {
            format!("{prefix}.{k}")
        }
    };
    match v {
        Value::Object(m) => {
            for (k, val) in m {
                render_text(val, &join(k), out);
            }
        }
        Value::Array(xs)
            if xs.iter().all(Value::is_string) && !xs.is_empty() && prefix == "certificates" =>
        {
            out.push_str("certificates:\n");
            for x in xs {
                out.push_str(&format!("  - {}\n", scalar_text(x)));
            }
        }
        Value::Array(xs) if is_flat(v) => {
            let items: Vec<String> = xs.iter().map(scalar_text).collect();
            out.push_str(&format!("{prefix}: [{}]\n", items.join(", ")));
        }
        Value::Array(xs) => {
            for (i, x) in xs.iter().enumerate() {
                render_text(x, &format!("{prefix}[{i}]"), out);
            }
        }
        other => out.push_str(&format!("{prefix}: {}\n", scalar_text(other))),
    }
}
