//! Command-line front end. `main` only parses arguments and maps errors to
//! exit codes; everything else lives here so it can be tested in-process.

use std::path::Path;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::contfrac::{builtin_algebraic_cf, euclid_cf, sqrt_cf, CfDoc, NumericCF};
use crate::doc::{series_schema, SeriesDoc};
use crate::error::{Error, Result};
use crate::float::{ComplexF, FloatContext, Precision};
use crate::montessus::ExperimentConfig;
use crate::pade::{hankel_grid, hankel_grid_csv, order_of_contact, pade_approximant, pade_table, row_to_cf, Contact};
use crate::poly::Polynomial;
use crate::rational::Rational;
use crate::series::{factorial_moments, series_from_moments, PowerSeries};

#[derive(Debug, Parser)]
#[command(name = "padelab", version, about = "Exact Padé tables, continued fractions and row-convergence experiments")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,

    /// Float precision in bits for diagnostics (24 or 53).
    #[arg(long, global = true)]
    pub precision: Option<u32>,

    /// Seed for randomized utilities. No current subcommand draws random
    /// numbers; the value is accepted so configs stay reproducible.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,

    /// Print the JSON schema of the subcommand's input and exit.
    #[arg(long, global = true)]
    pub emit_schema: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Args)]
pub struct SeriesArg {
    /// Builtin name (exp, geometric, geometric(a)), inline JSON or a path.
    #[arg(long)]
    pub series: Option<String>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// One Padé approximant [L/M].
    Pade {
        #[command(flatten)]
        series: SeriesArg,
        #[arg(long = "L")]
        l: Option<usize>,
        #[arg(long = "M")]
        m: Option<usize>,
    },
    /// The Padé table up to (Lmax, Mmax).
    Table {
        #[command(flatten)]
        series: SeriesArg,
        #[arg(long = "Lmax")]
        l_max: Option<usize>,
        #[arg(long = "Mmax")]
        m_max: Option<usize>,
    },
    /// Grid of Hankel determinants H_p^m.
    Hankel {
        #[command(flatten)]
        series: SeriesArg,
        #[arg(long = "mmax")]
        m_max: Option<usize>,
        #[arg(long = "pmax")]
        p_max: Option<usize>,
    },
    /// Continued-fraction expansions and evaluation.
    Cf {
        /// Euclid expansion of a rational "p/q".
        #[arg(long, conflicts_with_all = ["sqrt", "builtin", "input"])]
        euclid: Option<String>,
        /// Expansion of the square root of a positive integer.
        #[arg(long, conflicts_with_all = ["builtin", "input"])]
        sqrt: Option<u64>,
        /// Algebraic builtin: tan or exp.
        #[arg(long, conflicts_with = "input")]
        builtin: Option<String>,
        /// Continued-fraction document (inline JSON or path).
        #[arg(long)]
        input: Option<String>,
        /// Number of terms (sqrt counts q0; builtin counts partials).
        #[arg(long)]
        terms: Option<usize>,
        /// Also list the convergents.
        #[arg(long)]
        convergents: bool,
        /// Evaluate at this real point in float.
        #[arg(long, allow_hyphen_values = true)]
        at: Option<f64>,
    },
    /// Algebraic continued fraction through the row of rank p.
    RowCf {
        #[command(flatten)]
        series: SeriesArg,
        #[arg(long)]
        p: Option<usize>,
        #[arg(long = "n-min", default_value_t = 0)]
        n_min: usize,
        #[arg(long = "n-max")]
        n_max: Option<usize>,
    },
    /// Row-convergence experiment from a JSON config.
    Montessus {
        /// Inline JSON or a path.
        #[arg(long)]
        config: Option<String>,
    },
    /// Series in 1/z from a moment sequence.
    Moments {
        /// Comma-separated rationals, e.g. "1,1,2,6".
        #[arg(long, conflicts_with = "factorial", allow_hyphen_values = true)]
        moments: Option<String>,
        /// Use c_n = n! for n < K.
        #[arg(long)]
        factorial: Option<usize>,
        #[arg(long = "L", requires = "m")]
        l: Option<usize>,
        #[arg(long = "M", requires = "l")]
        m: Option<usize>,
    },
}

/// Run a parsed command and return the document to print.
pub fn run(cli: &Cli) -> Result<String> {
    if cli.emit_schema {
        return Ok(schema_for(&cli.command).to_string());
    }
    let ctx = FloatContext::with_precision(Precision::from_bits(cli.precision.unwrap_or(53))?);
    match &cli.command {
        Command::Pade { series, l, m } => {
            let (l, m) = (required(*l, "--L")?, required(*m, "--M")?);
            // One extra coefficient, when available, pins the order of contact.
            let s = load_series(series, l + m + 1).or_else(|_| load_series(series, l + m))?;
            pade(&s, l, m, cli.format)
        }
        Command::Table { series, l_max, m_max } => {
            let (l_max, m_max) = (required(*l_max, "--Lmax")?, required(*m_max, "--Mmax")?);
            let t = pade_table(&load_series(series, l_max + m_max)?, l_max, m_max)?;
            Ok(match cli.format {
                Format::Json => t.to_json().to_string(),
                Format::Csv => t.to_csv(),
            })
        }
        Command::Hankel { series, m_max, p_max } => {
            let (m_max, p_max) = (required(*m_max, "--mmax")?, required(*p_max, "--pmax")?);
            let s = load_series(series, m_max + 2 * p_max.max(1) - 2)?;
            Ok(match cli.format {
                Format::Csv => hankel_grid_csv(&s, m_max, p_max),
                Format::Json => {
                    let rows: Vec<Value> = hankel_grid(&s, m_max, p_max)
                        .into_iter()
                        .map(|row| Value::Array(row.into_iter().map(|c| json!(c)).collect()))
                        .collect();
                    json!({"mmax": m_max, "pmax": p_max, "H": rows}).to_string()
                }
            })
        }
        Command::Cf { euclid, sqrt, builtin, input, terms, convergents, at } => {
            cf(euclid, *sqrt, builtin, input, *terms, *convergents, *at, &ctx, cli.format)
        }
        Command::RowCf { series, p, n_min, n_max } => {
            let (p, n_max) = (required(*p, "--p")?, required(*n_max, "--n-max")?);
            if *n_min > n_max {
                return Err(Error::InvalidSpec(format!("--n-min {n_min} exceeds --n-max {n_max}")));
            }
            let rcf = row_to_cf(&load_series(series, n_max + p)?, p, *n_min..=n_max)?;
            let doc = serde_json::to_value(CfDoc::from_algebraic(&rcf.cf)).expect("serializable");
            Ok(json!({"p": p, "n_min": n_min, "n_max": n_max, "offset": rcf.offset, "cf": doc}).to_string())
        }
        Command::Montessus { config } => {
            let text = read_input(config.as_deref().ok_or(Error::InvalidSpec("missing --config".into()))?)?;
            let mut cfg = ExperimentConfig::from_json(&text)?;
            if let Some(bits) = cli.precision {
                cfg.precision = bits;
            }
            let report = cfg.run()?;
            Ok(match cli.format {
                Format::Json => report.to_json().to_string(),
                Format::Csv => report.to_csv(),
            })
        }
        Command::Moments { moments, factorial, l, m } => {
            let c = match (moments, factorial) {
                (Some(list), _) => list.split(',').map(|s| s.trim().parse()).collect::<Result<Vec<Rational>>>()?,
                (None, Some(k)) => factorial_moments(*k),
                (None, None) => return Err(Error::InvalidSpec("give --moments or --factorial".into())),
            };
            let s = series_from_moments(&c)?;
            let mut out = json!({"variable": "1/z", "shift": 1, "coeffs": s.coeffs()});
            if let (Some(l), Some(m)) = (l, m) {
                s.ensure_order(l + m)?;
                out["pade"] = entry_json(&s, *l, *m)?;
            }
            Ok(out.to_string())
        }
    }
}

fn required<T>(v: Option<T>, flag: &str) -> Result<T> {
    v.ok_or_else(|| Error::InvalidSpec(format!("missing {flag}")))
}

/// Inline JSON is recognised by its first character; anything else is a
/// path.
fn read_input(arg: &str) -> Result<String> {
    let t = arg.trim_start();
    if t.starts_with('{') || t.starts_with('[') {
        return Ok(arg.to_string());
    }
    std::fs::read_to_string(Path::new(arg)).map_err(|e| Error::InvalidSpec(format!("cannot read {arg}: {e}")))
}

fn load_series(arg: &SeriesArg, order: usize) -> Result<PowerSeries> {
    let raw = arg.series.as_deref().ok_or(Error::InvalidSpec("missing --series".into()))?;
    let t = raw.trim_start();
    let doc = if t.starts_with('{') {
        SeriesDoc::from_json(raw)?
    } else if Path::new(raw).is_file() {
        SeriesDoc::from_json(&read_input(raw)?)?
    } else {
        SeriesDoc::builtin(raw)
    };
    doc.to_series(order)
}

fn entry_json(series: &PowerSeries, l: usize, m: usize) -> Result<Value> {
    let e = pade_approximant(series, l, m)?;
    let rf = e.fraction().ok_or(Error::Blocked { l, m })?;
    Ok(json!({"L": l, "M": m, "num": rf.num().coeffs(), "den": rf.den().coeffs(), "normal": e.normal}))
}

fn pade(series: &PowerSeries, l: usize, m: usize, format: Format) -> Result<String> {
    let mut v = entry_json(series, l, m)?;
    let e = pade_approximant(series, l, m)?;
    let rf = e.fraction().expect("checked above");
    // Contact is only known when the series reaches past L + M.
    if let Ok(contact) = order_of_contact(series, rf) {
        v["contact"] = match contact {
            Contact::DisagreeAt(k) => json!({"first_difference": k}),
            Contact::AgreeThrough(k) => json!({"agrees_through": k}),
        };
    }
    Ok(match format {
        Format::Json => v.to_string(),
        Format::Csv => {
            let join = |p: &Polynomial| p.coeffs().iter().map(ToString::to_string).collect::<Vec<_>>().join(",");
            format!("num,{}\nden,{}\n", join(rf.num()), join(rf.den()))
        }
    })
}

fn numeric_json(cf: &NumericCF, with_convergents: bool) -> Result<Value> {
    // Simple fractions print as {"q0", "terms"}; general ones as the document.
    let simple = cf.partials().iter().all(|(p, _)| p == &Rational::from(1));
    let mut v = if simple {
        json!({"q0": cf.q0(), "terms": cf.partials().iter().map(|(_, q)| q).collect::<Vec<_>>()})
    } else {
        serde_json::to_value(CfDoc::from_numeric(cf)).expect("serializable")
    };
    if with_convergents {
        let values = cf.convergents().iter().map(|c| c.value()).collect::<Result<Vec<_>>>()?;
        v["convergents"] = json!(values);
    }
    Ok(v)
}

#[allow(clippy::too_many_arguments)]
fn cf(
    euclid: &Option<String>,
    sqrt: Option<u64>,
    builtin: &Option<String>,
    input: &Option<String>,
    terms: Option<usize>,
    with_convergents: bool,
    at: Option<f64>,
    ctx: &FloatContext,
    format: Format,
) -> Result<String> {
    let z = ComplexF::new(at.unwrap_or(0.0), 0.0);
    let mut v = if let Some(x) = euclid {
        let cf = euclid_cf(&x.parse()?);
        let mut v = numeric_json(&cf, with_convergents)?;
        if at.is_some() {
            v["value"] = json!(cf.evaluate(ctx, z, cf.len())?.re);
        }
        v
    } else if let Some(n) = sqrt {
        let cf = sqrt_cf(n, required(terms, "--terms")?);
        let mut v = numeric_json(&cf, with_convergents)?;
        if at.is_some() {
            v["value"] = json!(cf.evaluate(ctx, z, cf.len())?.re);
        }
        v
    } else {
        let cf = match (builtin, input) {
            (Some(name), _) => builtin_algebraic_cf(name)?.truncated(required(terms, "--terms")?),
            (None, Some(doc)) => CfDoc::from_json(&read_input(doc)?)?.to_algebraic()?,
            (None, None) => return Err(Error::InvalidSpec("give one of --euclid, --sqrt, --builtin, --input".into())),
        };
        let mut v = serde_json::to_value(CfDoc::from_algebraic(&cf)).expect("serializable");
        if with_convergents {
            let fr: Vec<Value> = cf
                .convergents()
                .iter()
                .map(|c| c.to_rational_function().map(|rf| json!({"num": rf.num().coeffs(), "den": rf.den().coeffs()})))
                .collect::<Result<_>>()?;
            v["convergents"] = Value::Array(fr);
        }
        if let Some(x) = at {
            v["at"] = json!(x);
            v["value"] = json!(cf.evaluate(ctx, z, cf.len())?.re);
        }
        v
    };
    if format == Format::Csv {
        return Err(Error::InvalidSpec("cf output is JSON only".into()));
    }
    if let Some(obj) = v.as_object_mut() {
        obj.retain(|_, x| !x.is_null());
    }
    Ok(v.to_string())
}

fn cf_schema() -> Value {
    json!({
        "$schema": "https://json-schema.org/draft/2020-12/schema",
        "title": "continued fraction",
        "type": "object",
        "required": ["q0", "partials"],
        "properties": {
            "q0": {"description": "rational string, or coefficient array for algebraic fractions"},
            "partials": {"type": "array", "items": {"type": "array", "minItems": 2, "maxItems": 2,
                         "description": "[p_k, q_k]"}}
        }
    })
}

fn schema_for(cmd: &Command) -> Value {
    match cmd {
        Command::Cf { .. } => cf_schema(),
        Command::Montessus { .. } => {
            let mut s = ExperimentConfig::schema();
            s["$defs"] = series_schema()["$defs"].clone();
            s["properties"]["spec"] = json!({"$ref": "#/$defs/series"});
            s
        }
        Command::Moments { .. } => json!({"type": "string", "description": "comma-separated rational moments"}),
        _ => series_schema(),
    }
}
