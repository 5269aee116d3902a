//! Command-line front end.
//!
//! Every subcommand writes one JSON document (or CSV for sweeps) to stdout
//! or `--output`. Exit status is 0 on success, 1 when a consistency check
//! fails, 2 on invalid input and 3 when a search budget runs out.

use std::ffi::OsString;
use std::fs;
use std::path::{Path, PathBuf};
use std::time::{Duration, Instant};

use clap::{Args, Parser, Subcommand};
use num_rational::BigRational;
use num_traits::Signed;
use serde_json::{json, Value};

use crate::bounds::{self, bound_exponents, evaluate_bound, BoundParams, CATALOG};
use crate::enumeration::{self, EnumerationBudget};
use crate::error::{Error, Result};
use crate::field::{format_rational, parse_rational, rat};
use crate::io;
use crate::orders::Discriminant;
use crate::reductions::{classify_point, gamma_to_torsion_variety, transverse_lift, GammaPoint, VarietyParams};
use crate::siegel::{complete_to_square, small_solution, SiegelConfig};
use crate::subgroups::{orthogonal_complement, tangent_orthogonal, SurrogateKind};

/// Environment variable holding the default discriminant.
pub const DISC_ENV: &str = "TAI_DISC";

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "cmtors", version, about = "Torsion anomalous intersections in powers of CM elliptic curves")]
pub struct RunConfig {
    /// Discriminant of the CM order (-3, -4, -7, -8 or -11).
    #[arg(long, env = DISC_ENV, default_value_t = -4, allow_hyphen_values = true, global = true)]
    pub disc: i64,
    /// Write the report here instead of stdout.
    #[arg(long, short, global = true)]
    pub output: Option<PathBuf>,
    /// Log timings to stderr.
    #[arg(long, short, global = true)]
    pub verbose: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate an explicit bound, list the catalog, or sweep exponents as CSV.
    Bounds(BoundsArgs),
    /// Check the exponent identities between catalog entries.
    Identities,
    /// Classify a point of V against its minimal torsion coset.
    Classify {
        #[arg(long)]
        module: PathBuf,
        #[arg(long)]
        point: PathBuf,
        #[arg(long = "V")]
        v: PathBuf,
    },
    /// Reduce a point of Γ_A to a torsion variety.
    Reduce {
        #[arg(long)]
        module: PathBuf,
        /// Relations `{a, b, zeta}`, or a point `[{free, torsion}, ..]`.
        #[arg(long)]
        point: PathBuf,
    },
    /// Lift a point of Γ to a point of a transverse torsion variety.
    Lift {
        #[arg(long)]
        module: PathBuf,
        #[arg(long)]
        point: PathBuf,
    },
    /// List connected subgroups of bounded degree, or count torsion points.
    Enumerate(EnumerateArgs),
    /// Whether two parametrizations have hermitian-orthogonal tangent spaces.
    Orthogonal {
        #[arg(long = "A")]
        a: PathBuf,
        #[arg(long = "B")]
        b: PathBuf,
        /// Read both files as defining matrices instead of parametrizations.
        #[arg(long)]
        subgroups: bool,
    },
    /// Small solutions of a linear system over the order.
    Siegel(SiegelArgs),
    /// Orthogonal complement of a subgroup and the size of the intersection.
    Complement {
        #[arg(long = "B")]
        b: PathBuf,
    },
}

#[derive(Debug, Args)]
pub struct BoundsArgs {
    #[arg(long)]
    pub theorem: Option<String>,
    #[arg(long = "N", default_value_t = 3)]
    pub n: u32,
    #[arg(long, default_value_t = 1)]
    pub d: u32,
    #[arg(long, default_value_t = 2)]
    pub r: u32,
    #[arg(long, default_value_t = 1)]
    pub t: u32,
    #[arg(long = "hV", default_value = "1")]
    pub h_v: String,
    #[arg(long = "degV", default_value = "1")]
    pub deg_v: String,
    #[arg(long = "ktorV", default_value = "1")]
    pub ktor_v: String,
    #[arg(long = "kV", default_value = "1")]
    pub k_v: String,
    #[arg(long = "hG", default_value = "0")]
    pub h_g: String,
    #[arg(long, default_value = "1/10")]
    pub eta: String,
    /// Implied constant for a theorem, `id=value`.
    #[arg(long = "const", value_name = "ID=VALUE")]
    pub constants: Vec<String>,
    /// Extra named input, `key=value`.
    #[arg(long, value_name = "KEY=VALUE")]
    pub aux: Vec<String>,
    /// Use a subgroup's degree surrogate as `deg B`.
    #[arg(long = "B")]
    pub subgroup: Option<PathBuf>,
    #[arg(long, value_parser = ["minor-sum", "row-product"], default_value = "minor-sum")]
    pub surrogate: String,
    /// Emit the identity report instead.
    #[arg(long)]
    pub identities: bool,
    /// List the catalog.
    #[arg(long)]
    pub list: bool,
    /// CSV of exponents over all valid (N, d, r, t) with N up to this value.
    #[arg(long, value_name = "N_MAX")]
    pub sweep: Option<u32>,
}

#[derive(Debug, Args)]
pub struct EnumerateArgs {
    #[arg(long, default_value_t = 1)]
    pub dim: usize,
    #[arg(long = "N", default_value_t = 2)]
    pub n: usize,
    #[arg(long = "max-X", default_value_t = 2)]
    pub max_x: i128,
    /// Include the subgroups themselves.
    #[arg(long)]
    pub list: bool,
    #[arg(long)]
    pub csv: bool,
    #[arg(long, value_name = "MS")]
    pub time_cap_ms: Option<u64>,
    #[arg(long, default_value_t = enumeration::DEFAULT_WITNESS_LEVEL)]
    pub witness_level: i128,
    /// Count torsion points of order dividing M instead.
    #[arg(long, value_name = "M")]
    pub torsion: Option<i128>,
}

#[derive(Debug, Args)]
pub struct SiegelArgs {
    /// Matrix file of the system `S·v = 0`.
    #[arg(long)]
    pub system: PathBuf,
    /// Number of independent solutions.
    #[arg(long, default_value_t = 1)]
    pub k: usize,
    /// Override the certificate constant.
    #[arg(long)]
    pub constant: Option<String>,
    #[arg(long)]
    pub no_box: bool,
    /// Treat the file as a subgroup and complete it to an invertible matrix.
    #[arg(long)]
    pub complete: bool,
}

/// The report and exit status of one run.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub output: String,
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::parse(path.display().to_string(), e.to_string()))
}

fn with_file<T>(path: &Path, f: impl FnOnce(&str) -> Result<T>) -> Result<T> {
    let text = read(path)?;
    f(&text).map_err(|e| match e {
        Error::Parse { location, message } => Error::Parse {
            location: format!("{}: {location}", path.display()),
            message,
        },
        other => other,
    })
}

fn key_value(s: &str) -> Result<(String, BigRational)> {
    let (k, v) = s
        .split_once('=')
        .ok_or_else(|| Error::parse(format!("{s:?}"), "expected key=value"))?;
    Ok((k.trim().to_string(), parse_rational(v)?))
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("plain data");
    s.push('\n');
    s
}

fn bound_params(a: &BoundsArgs) -> Result<BoundParams> {
    let mut p = BoundParams::new(a.n, a.d).with_r(a.r).with_t(a.t).with_eta(parse_rational(&a.eta)?);
    p.h_v = parse_rational(&a.h_v)?;
    p.deg_v = parse_rational(&a.deg_v)?;
    p.ktor_v = parse_rational(&a.ktor_v)?;
    p.k_v = parse_rational(&a.k_v)?;
    p.h_g = parse_rational(&a.h_g)?;
    for c in &a.constants {
        let (k, v) = key_value(c)?;
        p = p.with_constant(&k, v);
    }
    for c in &a.aux {
        let (k, v) = key_value(c)?;
        p = p.with_aux(&k, v);
    }
    if let Some(path) = &a.subgroup {
        let b = with_file(path, io::read_subgroup)?;
        let kind = if a.surrogate == "row-product" {
            SurrogateKind::RowProduct
        } else {
            SurrogateKind::MinorSum
        };
        p = p.with_subgroup_degree(&b, kind);
    }
    if !p.eta.is_positive() {
        return Err(Error::domain("eta must be positive"));
    }
    Ok(p)
}

fn catalog_json() -> Value {
    let entries: Vec<Value> = CATALOG
        .iter()
        .map(|t| {
            let sample = t.sample_params();
            json!({
                "id": t.id,
                "description": t.description,
                "direction": t.direction,
                "eta_threshold": (t.eta_threshold)(&sample).map(|x| format_rational(&x)),
            })
        })
        .collect();
    Value::Array(entries)
}

fn sweep_csv(a: &BoundsArgs, base: &BoundParams, n_max: u32) -> Result<String> {
    let ids: Vec<&str> = match &a.theorem {
        Some(id) => vec![id.as_str()],
        None => bounds::theorem_ids(),
    };
    let mut out = String::from("theorem,N,d,r,t,factor,exponent,eta_coef\n");
    for id in ids {
        let info = CATALOG
            .iter()
            .find(|t| t.id == id)
            .ok_or_else(|| Error::domain(format!("unknown theorem id {id}")))?;
        let mut seen = Vec::new();
        for n in 1..=n_max {
            for d in 1..n.max(2) {
                for r in 1..=n {
                    for t in 1..n.max(2) {
                        let mut p = base.clone();
                        p.n = n;
                        p.d = d;
                        p.r = r;
                        p.t = t;
                        if (info.check_range)(&p).is_err() {
                            continue;
                        }
                        // η just under the threshold keeps every valid point in range
                        if let Some(th) = (info.eta_threshold)(&p) {
                            if p.eta >= th {
                                p.eta = th / rat(2, 1);
                            }
                        }
                        let Ok(factors) = bound_exponents(id, &p) else { continue };
                        let row: Vec<String> = factors
                            .iter()
                            .map(|f| format!("{},{},{}", f.name, format_rational(&f.exponent), format_rational(&f.eta_coef)))
                            .collect();
                        // skip parameters the bound does not depend on
                        let key = (n, d, row.clone());
                        if seen.contains(&key) {
                            continue;
                        }
                        seen.push(key);
                        for f in row {
                            out.push_str(&format!("{id},{n},{d},{r},{t},{f}\n"));
                        }
                    }
                }
            }
        }
    }
    Ok(out)
}

fn run_bounds(a: &BoundsArgs) -> Result<Outcome> {
    if a.identities {
        return run_identities();
    }
    if a.list {
        return Ok(ok(pretty(&catalog_json())));
    }
    let p = bound_params(a)?;
    if let Some(n_max) = a.sweep {
        return Ok(ok(sweep_csv(a, &p, n_max)?));
    }
    let id = a
        .theorem
        .as_deref()
        .ok_or_else(|| Error::domain("--theorem is required (see --list)"))?;
    let res = evaluate_bound(id, &p)?;
    Ok(ok(pretty(&res.to_json())))
}

fn run_identities() -> Result<Outcome> {
    let report = bounds::exponent_identities();
    let code = if report.all_hold { EXIT_OK } else { EXIT_CHECK_FAILED };
    let v = serde_json::to_value(&report).expect("plain data");
    Ok(Outcome { code, output: pretty(&v) })
}

/// `{a, b, zeta}` relations, or a plain point that is converted.
fn read_gamma_or_point(text: &str, spec: &crate::mordell_weil::ModuleSpec) -> Result<GammaPoint> {
    let trimmed = text.trim_start();
    if trimmed.starts_with('{') && trimmed.contains("\"a\"") {
        io::read_gamma(text, spec)
    } else {
        GammaPoint::from_point(spec, &io::read_point(text, spec)?)
    }
}

fn run_enumerate(disc: Discriminant, a: &EnumerateArgs) -> Result<Outcome> {
    if let Some(m) = a.torsion {
        let count = enumeration::enumerate_torsion(disc, a.n, m, if a.list { 4096 } else { 0 })?;
        return Ok(ok(pretty(&io::torsion_count_json(&count, a.list))));
    }
    let mut budget = EnumerationBudget::new(disc, a.n, a.dim, a.max_x);
    budget.witness_level = a.witness_level;
    if let Some(ms) = a.time_cap_ms {
        budget = budget.with_time_cap(Duration::from_millis(ms));
    }
    let listing = enumeration::enumerate_subgroups(&budget)?;
    let code = if listing.partial { EXIT_BUDGET } else { EXIT_OK };
    let output = if a.csv {
        let mut out = String::from("index,row_product,hnf\n");
        for (i, s) in listing.subgroups.iter().enumerate() {
            let rows: Vec<String> = (0..s.subgroup.codim())
                .map(|k| {
                    let row: Vec<String> = s.subgroup.matrix().row(k).iter().map(ToString::to_string).collect();
                    row.join(" ")
                })
                .collect();
            out.push_str(&format!("{i},{},{}\n", s.row_product, rows.join(";")));
        }
        out
    } else {
        let (c, eta) = enumeration::default_growth(a.n);
        let mut v = io::listing_json(&listing, a.list);
        v["growth_envelope"] = json!(format_rational(&listing.growth_envelope(&budget, &c, &eta)));
        v["budget"] = serde_json::to_value(&budget).expect("plain data");
        pretty(&v)
    };
    Ok(Outcome { code, output })
}

fn run_siegel(a: &SiegelArgs) -> Result<Outcome> {
    let config = SiegelConfig {
        constant: a.constant.as_deref().map(parse_rational).transpose()?,
        box_fallback: !a.no_box,
        ..SiegelConfig::default()
    };
    if a.complete {
        let m = with_file(&a.system, io::read_subgroup)?;
        return Ok(ok(pretty(&io::completion_json(&complete_to_square(&m, &config)?))));
    }
    let s = with_file(&a.system, io::read_matrix)?;
    Ok(ok(pretty(&io::siegel_json(&small_solution(&s, a.k, &config)?))))
}

fn ok(output: String) -> Outcome {
    Outcome { code: EXIT_OK, output }
}

fn dispatch(cfg: &RunConfig) -> Result<Outcome> {
    let disc = Discriminant::new(cfg.disc)?;
    match &cfg.command {
        Command::Bounds(a) => run_bounds(a),
        Command::Identities => run_identities(),
        Command::Classify { module, point, v } => {
            let m = with_file(module, io::read_module)?;
            let x = with_file(point, |t| io::read_point(t, &m.spec))?;
            let params: VarietyParams = with_file(v, |t| serde_json::from_str(t).map_err(io::json_error))?;
            Ok(ok(pretty(&io::report_json(&classify_point(&params, &m.spec, &x)?))))
        }
        Command::Reduce { module, point } => {
            let m = with_file(module, io::read_module)?;
            let x = with_file(point, |t| read_gamma_or_point(t, &m.spec))?;
            Ok(ok(pretty(&io::reduction_json(&gamma_to_torsion_variety(&m.spec, &x)?))))
        }
        Command::Lift { module, point } => {
            let m = with_file(module, io::read_module)?;
            let x = with_file(point, |t| read_gamma_or_point(t, &m.spec))?;
            Ok(ok(pretty(&io::lift_json(&transverse_lift(&m.spec, &x)?))))
        }
        Command::Enumerate(a) => run_enumerate(disc, a),
        Command::Orthogonal { a, b, subgroups } => {
            let (pa, pb) = if *subgroups {
                (
                    with_file(a, io::read_subgroup)?.parametrization(),
                    with_file(b, io::read_subgroup)?.parametrization(),
                )
            } else {
                (with_file(a, io::read_matrix)?, with_file(b, io::read_matrix)?)
            };
            let orthogonal = tangent_orthogonal(&pa, &pb)?;
            Ok(ok(pretty(&json!({ "orthogonal": orthogonal }))))
        }
        Command::Siegel(a) => run_siegel(a),
        Command::Complement { b } => {
            let b = with_file(b, io::read_subgroup)?;
            Ok(ok(pretty(&io::complement_json(&b, &orthogonal_complement(&b)?))))
        }
    }
}

/// Run a parsed configuration. Errors become an exit status and a message.
pub fn run(cfg: &RunConfig) -> Outcome {
    let start = Instant::now();
    let outcome = match dispatch(cfg) {
        Ok(o) => o,
        Err(e) => Outcome {
            code: exit_code(&e),
            output: format!("error: {e}\n"),
        },
    };
    if cfg.verbose {
        eprintln!("[{:.3}s] exit {}", start.elapsed().as_secs_f64(), outcome.code);
    }
    outcome
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Budget(_) => EXIT_BUDGET,
        _ => EXIT_INVALID,
    }
}

/// Parse arguments, run, and print. Returns the process exit status.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cfg = match RunConfig::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_INVALID } else { EXIT_OK };
        }
    };
    let outcome = run(&cfg);
    if outcome.code == EXIT_INVALID || outcome.code == EXIT_BUDGET && outcome.output.starts_with("error:") {
        eprint!("{}", outcome.output);
        return outcome.code;
    }
    match &cfg.output {
        Some(path) => {
            if let Err(e) = fs::write(path, &outcome.output) {
                eprintln!("error: cannot write {}: {e}", path.display());
                return EXIT_INVALID;
            }
        }
        None => print!("{}", outcome.output),
    }
    outcome.code
}
