use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::de::DeserializeOwned;
use serde::Serialize;
use serde_json::{json, Value};

use multsys::chaos::{bonami_kiener_check, max_partial_sum, ChaosSum};
use multsys::extremal::{extremalize, verify_theorem1, ConvexSpec, Norm};
use multsys::harness::{self, azuma_check, run_suite, GeneratorConfig, GeneratorKind, Suite, SuiteOptions};
use multsys::rational;
use multsys::systems::{extend_to_multiplicative, mult_error_family, BoundedSystem, SubsetFamily};
use multsys::trig::{
    corollary_x19_check, corollary_x20_check, dirichlet_csv, dirichlet_table, inequality_x21_check, TrigPoly,
    YoungFn,
};
use multsys::{Error, Result};

#[derive(Parser)]
#[command(name = "multsys", version, about = "Multiplicative systems of bounded step functions")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args)]
struct Global {
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[arg(long, global = true)]
    tol: Option<f64>,
    /// Output file (or directory for `suite`); stdout when absent.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Cmd {
    /// d-multiplicative error μ_d of a system.
    Error {
        #[arg(long)]
        system: PathBuf,
        #[arg(long)]
        d: usize,
    },
    /// Extend a system so all moments on a subset family vanish.
    Extend {
        #[arg(long)]
        system: PathBuf,
        /// `le:d`, `eq:d`, `all`, or explicit sets like `1,2;3`.
        #[arg(long)]
        family: String,
    },
    /// Replace every member by a two-valued extremal one.
    Extremalize {
        #[arg(long)]
        system: PathBuf,
        #[arg(long)]
        trace: Option<PathBuf>,
    },
    Verify {
        #[command(subcommand)]
        what: Verify,
    },
    Chaos {
        #[command(subcommand)]
        what: ChaosCmd,
    },
    Trig {
        #[command(subcommand)]
        what: TrigCmd,
    },
    /// Tail bound for the sum of the members.
    Azuma {
        #[arg(long)]
        system: PathBuf,
        /// Threshold λ > 0 as `p/q` or an integer.
        #[arg(long)]
        lambda: String,
    },
    /// Write a generated system (or lacunary polynomial) as JSON.
    Generate {
        #[arg(long, value_enum)]
        kind: Kind,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 8)]
        pieces: usize,
        #[arg(long, default_value = "1/10")]
        eps: String,
    },
    /// Run a verification corpus.
    Suite {
        #[arg(value_enum, default_value_t = SuiteArg::All)]
        name: SuiteArg,
        #[arg(long)]
        instances: Option<usize>,
        #[arg(long)]
        record_timings: bool,
    },
}

#[derive(Subcommand)]
enum Verify {
    Theorem1 {
        #[arg(long)]
        system: PathBuf,
        #[arg(long)]
        convex: PathBuf,
        #[arg(long)]
        d: usize,
        #[arg(long)]
        report: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum ChaosCmd {
    /// Moment bound ‖S‖_p ≤ (p-1)^{d/2}‖S‖_2.
    Check {
        #[arg(long)]
        terms: PathBuf,
        #[arg(long)]
        p: f64,
    },
    /// Maximal partial sum along the given term order (1-based positions).
    Maximal {
        #[arg(long)]
        terms: PathBuf,
        #[arg(long, value_delimiter = ',')]
        order: Vec<usize>,
        #[arg(long, default_value = "2")]
        norm: String,
    },
}

#[derive(Subcommand)]
enum TrigCmd {
    X19 {
        #[arg(long)]
        poly: PathBuf,
        #[arg(long, default_value = "pow:2")]
        young: YoungFn,
        #[arg(long)]
        d: usize,
    },
    X20 {
        #[arg(long)]
        poly: PathBuf,
        #[arg(long, default_value = "pow:2")]
        young: YoungFn,
        #[arg(long)]
        d: usize,
    },
    X21 {
        #[arg(long)]
        poly: PathBuf,
        #[arg(long)]
        p: f64,
        #[arg(long)]
        d: usize,
    },
    /// Norm table of the trigonometric and Walsh Dirichlet kernels of order 2^n.
    Dirichlet {
        #[arg(long, default_value_t = 10)]
        max_n: u32,
        /// Luxemburg norm for this Young function; L1 when absent.
        #[arg(long)]
        young: Option<YoungFn>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Rademacher,
    HaarMartingale,
    PerturbedMultiplicative,
    RandomStep,
    LacunaryTrig,
}

#[derive(Clone, Copy, ValueEnum)]
enum SuiteArg {
    Theorem1,
    Chaos,
    Trig,
    Azuma,
    Extension,
    All,
}

fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T> {
    Ok(serde_json::from_str(&fs::read_to_string(path)?)?)
}

fn scalar(v: &Value) -> Option<String> {
    match v {
        Value::Null => Some(String::new()),
        Value::Bool(b) => Some(b.to_string()),
        Value::Number(n) => Some(n.to_string()),
        Value::String(s) => Some(s.clone()),
        _ => None,
    }
}

/// Flattens the scalar fields of an object (or of each object in an array) into CSV.
fn to_csv(v: &Value) -> Result<String> {
    let rows: Vec<&serde_json::Map<String, Value>> = match v {
        Value::Object(m) => vec![m],
        Value::Array(a) => a.iter().filter_map(Value::as_object).collect(),
        _ => return Err(Error::InvalidParameter("value has no CSV form".into())),
    };
    let Some(first) = rows.first() else { return Ok(String::new()) };
    let cols: Vec<&String> = first.iter().filter(|(_, x)| scalar(x).is_some()).map(|(k, _)| k).collect();
    let mut out = cols.iter().map(|c| c.as_str()).collect::<Vec<_>>().join(",");
    out.push('\n');
    for r in rows {
        let line: Vec<String> = cols.iter().map(|c| r.get(*c).and_then(scalar).unwrap_or_default()).collect();
        out.push_str(&line.join(","));
        out.push('\n');
    }
    Ok(out)
}

fn emit(value: &impl Serialize, format: Format, out: Option<&Path>) -> Result<()> {
    let v = serde_json::to_value(value)?;
    let text = match format {
        Format::Json => serde_json::to_string_pretty(&v)? + "\n",
        Format::Csv => to_csv(&v)?,
    };
    match out {
        Some(p) => fs::write(p, text)?,
        None => print!("{text}"),
    }
    Ok(())
}

fn run(cli: Cli) -> Result<bool> {
    let g = &cli.global;
    let out = g.out.as_deref();
    match cli.cmd {
        Cmd::Error { system, d } => {
            let sys: BoundedSystem = read_json(&system)?;
            let family = SubsetFamily::up_to(sys.len(), d);
            if d > sys.len() {
                return Err(Error::OrderOutOfRange { d, n: sys.len() });
            }
            let mu = mult_error_family(&sys, &family)?;
            emit(&json!({"d": d, "mu": rational::format(&mu), "mu_f64": rational::to_f64(&mu)}), g.format, out)?;
            Ok(true)
        }
        Cmd::Extend { system, family } => {
            let sys: BoundedSystem = read_json(&system)?;
            let fam = SubsetFamily::parse(&family, sys.len())?;
            emit(&extend_to_multiplicative(&sys, &fam)?, Format::Json, out)?;
            Ok(true)
        }
        Cmd::Extremalize { system, trace } => {
            let sys: BoundedSystem = read_json(&system)?;
            let (xi, tr) = extremalize(&sys)?;
            if let Some(t) = trace {
                emit(&tr, Format::Json, Some(&t))?;
            }
            emit(&xi, Format::Json, out)?;
            Ok(true)
        }
        Cmd::Verify { what: Verify::Theorem1 { system, convex, d, report } } => {
            let sys: BoundedSystem = read_json(&system)?;
            let spec: ConvexSpec = read_json(&convex)?;
            let rep = verify_theorem1(&sys, &spec, d, g.tol.unwrap_or(1e-12))?;
            emit(&rep, g.format, report.as_deref().or(out))?;
            Ok(rep.pass)
        }
        Cmd::Chaos { what: ChaosCmd::Check { terms, p } } => {
            let s: ChaosSum = read_json(&terms)?;
            let rep = bonami_kiener_check(&s, p, g.tol.unwrap_or(1e-9))?;
            emit(&rep, g.format, out)?;
            Ok(rep.pass)
        }
        Cmd::Chaos { what: ChaosCmd::Maximal { terms, order, norm } } => {
            let s: ChaosSum = read_json(&terms)?;
            let masks = order
                .iter()
                .map(|&i| {
                    s.terms()
                        .get(i.wrapping_sub(1))
                        .map(|t| t.0)
                        .ok_or_else(|| Error::InvalidParameter(format!("term position {i} out of range")))
                })
                .collect::<Result<Vec<_>>>()?;
            let m = max_partial_sum(&s, &masks, Norm::parse(&norm)?)?;
            emit(&m, Format::Json, out)?;
            Ok(true)
        }
        Cmd::Trig { what } => {
            let tol = g.tol.unwrap_or(1e-9);
            match what {
                TrigCmd::X19 { poly, young, d } => {
                    let rep = corollary_x19_check(&read_json::<TrigPoly>(&poly)?, &young, d, tol)?;
                    emit(&rep, g.format, out)?;
                    Ok(rep.pass)
                }
                TrigCmd::X20 { poly, young, d } => {
                    let rep = corollary_x20_check(&read_json::<TrigPoly>(&poly)?, &young, d, tol)?;
                    emit(&rep, g.format, out)?;
                    Ok(rep.pass)
                }
                TrigCmd::X21 { poly, p, d } => {
                    let rep = inequality_x21_check(&read_json::<TrigPoly>(&poly)?, p, d, tol)?;
                    emit(&rep, g.format, out)?;
                    Ok(rep.pass)
                }
                TrigCmd::Dirichlet { max_n, young } => {
                    let rows = dirichlet_table(0..=max_n, young.as_ref(), tol)?;
                    let csv_out = g.format == Format::Csv || out.is_some_and(|p| p.extension().is_some_and(|e| e == "csv"));
                    if csv_out {
                        let text = dirichlet_csv(&rows);
                        match out {
                            Some(p) => fs::write(p, text)?,
                            None => print!("{text}"),
                        }
                    } else {
                        emit(&rows, Format::Json, out)?;
                    }
                    Ok(true)
                }
            }
        }
        Cmd::Azuma { system, lambda } => {
            let sys: BoundedSystem = read_json(&system)?;
            let rep = azuma_check(&sys, &rational::parse(&lambda)?, g.tol.unwrap_or(0.0))?;
            emit(&rep, g.format, out)?;
            Ok(rep.pass)
        }
        Cmd::Generate { kind, n, pieces, eps } => {
            let kind = match kind {
                Kind::Rademacher => GeneratorKind::Rademacher,
                Kind::HaarMartingale => GeneratorKind::HaarMartingale,
                Kind::PerturbedMultiplicative => GeneratorKind::PerturbedMultiplicative,
                Kind::RandomStep => GeneratorKind::RandomStep,
                Kind::LacunaryTrig => GeneratorKind::LacunaryTrig,
            };
            let mut cfg = GeneratorConfig::new(kind, n, g.seed);
            cfg.pieces = pieces;
            cfg.eps = rational::parse(&eps)?;
            if kind == GeneratorKind::LacunaryTrig {
                emit(&harness::generate_lacunary(&cfg)?, Format::Json, out)?;
            } else {
                emit(&harness::generate(&cfg)?, Format::Json, out)?;
            }
            Ok(true)
        }
        Cmd::Suite { name, instances, record_timings } => {
            let suite = match name {
                SuiteArg::Theorem1 => Suite::Theorem1,
                SuiteArg::Chaos => Suite::Chaos,
                SuiteArg::Trig => Suite::Trig,
                SuiteArg::Azuma => Suite::Azuma,
                SuiteArg::Extension => Suite::Extension,
                SuiteArg::All => Suite::All,
            };
            let opts = SuiteOptions {
                instances,
                tol: g.tol.unwrap_or(1e-12),
                record_timings,
            };
            let rep = run_suite(suite, g.seed, out, &opts)?;
            let summary = json!({
                "suite": rep.suite, "seed": rep.seed, "total": rep.total, "passed": rep.passed,
                "failed": rep.failed, "pass": rep.pass, "min_slack": rep.min_slack,
            });
            match g.format {
                Format::Csv => emit(&rep.instances, Format::Csv, None)?,
                Format::Json => emit(&summary, Format::Json, None)?,
            }
            Ok(rep.pass)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
