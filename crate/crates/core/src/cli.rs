//! The `residue` command line.
//!
//! Every report is written as JSON `{"config": .., "report": ..}` or as CSV
//! preceded by a `# config: ..` line. The embedded config is the resolved run
//! configuration minus the worker count, so reports are byte-identical for any
//! number of workers.

use std::fs::File;
use std::io::{self, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use crate::artin_euler::{
    constants, envelope_products, log_sum_l1, mertens_product, truncated_product_l1,
    TruncationHeight,
};
use crate::family_stats::{
    chebotarev_densities, composition_sweep, empirical_moments, exceptional_budget, scan_residues,
    MomentSource, MomentStatus,
};
use crate::field_catalog::{
    enumerate_cubics, filter_by_conditions, load_catalog, write_catalog, DiscWindow, GroupTag,
    LocalCondition, LocalConditionSet, NumberFieldRecord,
};
use crate::numeric::{resolve_workers, worker_pool};
use crate::prime_poly::{CycleType, IntPolynomial};
use crate::quadratic_oracle::{
    class_number_by_character_sum, compare_truncation_with_primes, fundamental_range,
    TRUNCATION_TOLERANCE,
};
use crate::random_model::{
    l1_of_sample, model_l1, ChebotarevDistribution, Deformation, ModelSample,
};
use crate::Error;

/// Seed used when `--seed` is not given.
pub const DEFAULT_SEED: u64 = 0x5eed_2e51_d0e5;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Parser)]
#[command(
    name = "residue",
    version,
    about = "Truncated Euler products for residues of S_n-field zeta functions"
)]
pub struct Cli {
    /// Worker threads (0 = all cores); RESIDUE_WORKERS overrides.
    #[arg(long, global = true)]
    pub workers: Option<usize>,
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Write the report here instead of standard output.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    /// Truncated L(1, rho) for one polynomial.
    Estimate(EstimateArgs),
    /// Truncated L(1, rho) for every field of a catalog.
    Scan(ScanArgs),
    /// Enumerate x^3 + ax + b and emit the catalog.
    Enumerate(EnumerateArgs),
    /// Frobenius class frequencies against Chebotarev densities.
    Chebotarev(ChebotarevArgs),
    /// Empirical moments of the small-prime sum against the explicit bound.
    Moments(MomentsArgs),
    /// Truncated L(1, rho) for a random-model draw.
    Model(ModelArgs),
    /// Class-number oracle against truncated products for imaginary quadratics.
    Oracle(OracleArgs),
    /// Exhaustive sweep of the composition inequalities.
    CheckInequalities(InequalityArgs),
    /// Euler's constant, zeta(2..6), Mertens products and exceptional-set budgets.
    Constants(ConstantsArgs),
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Estimate(_) => "estimate",
            Command::Scan(_) => "scan",
            Command::Enumerate(_) => "enumerate",
            Command::Chebotarev(_) => "chebotarev",
            Command::Moments(_) => "moments",
            Command::Model(_) => "model",
            Command::Oracle(_) => "oracle",
            Command::CheckInequalities(_) => "check-inequalities",
            Command::Constants(_) => "constants",
        }
    }

    fn default_format(&self) -> Format {
        match self {
            Command::Enumerate(_) | Command::Oracle(_) => Format::Csv,
            _ => Format::Json,
        }
    }
}

fn parse_poly(s: &str) -> Result<IntPolynomial, String> {
    let coeffs = s
        .split(',')
        .map(|t| {
            t.trim()
                .parse::<i64>()
                .map_err(|_| format!("bad coefficient {t:?}"))
        })
        .collect::<Result<Vec<_>, _>>()?;
    IntPolynomial::new(coeffs).map_err(|e| e.to_string())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    /// Product of local factors over p < x.
    Product,
    /// Exponential of the prime-power sum over p^k < x.
    LogSum,
}

#[derive(Debug, Args, Serialize)]
pub struct EstimateArgs {
    /// Monic coefficients, low to high, e.g. -1,-1,0,1 for x^3 - x - 1.
    #[arg(long, allow_hyphen_values = true, value_parser = parse_poly)]
    #[serde(serialize_with = "ser_display")]
    pub poly: IntPolynomial,
    /// Truncation height, or "auto" for (log |D|)^2.5.
    #[arg(long, default_value = "auto")]
    pub x: TruncationHeight,
    #[arg(long, value_enum, default_value = "product")]
    pub method: Method,
}

fn ser_display<T: std::fmt::Display, S: serde::Serializer>(v: &T, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

/// Where a family comes from: a CSV catalog or cubic enumeration.
#[derive(Debug, Args, Serialize)]
pub struct CatalogArgs {
    /// Catalog CSV.
    #[arg(long, conflicts_with = "height")]
    pub input: Option<PathBuf>,
    /// Enumerate x^3 + ax + b with |a|, |b| <= height.
    #[arg(long)]
    pub height: Option<i64>,
    /// Keep only records tagged as S_n (input or heuristic).
    #[arg(long)]
    pub sn_only: bool,
    /// Local condition P:SPEC with SPEC one of `ramified`, parts such as
    /// `1.1.1`, or `~parts` for "this type whenever unramified".
    #[arg(long = "condition", value_parser = parse_condition)]
    #[serde(serialize_with = "ser_conditions")]
    pub conditions: Vec<(u64, LocalCondition)>,
    /// Discriminant window X/2 < |D| <= X; conditions must then sit at p <= c1 log X.
    #[arg(long)]
    pub window: Option<f64>,
    #[arg(long, default_value_t = 1.0)]
    pub c1: f64,
}

fn ser_conditions<S: serde::Serializer>(
    v: &[(u64, LocalCondition)],
    s: S,
) -> Result<S::Ok, S::Error> {
    use serde::ser::SerializeMap;
    let mut m = s.serialize_map(Some(v.len()))?;
    for (p, c) in v {
        m.serialize_entry(&p.to_string(), c)?;
    }
    m.end()
}

fn parse_parts(s: &str) -> Result<CycleType, String> {
    let parts = s
        .split('.')
        .map(|t| {
            t.parse::<u32>()
                .map_err(|_| format!("bad cycle part {t:?}"))
        })
        .collect::<Result<Vec<_>, _>>()?;
    CycleType::new(parts).map_err(|e| e.to_string())
}

fn parse_condition(s: &str) -> Result<(u64, LocalCondition), String> {
    let (p, spec) = s
        .split_once(':')
        .ok_or_else(|| format!("expected P:SPEC, got {s:?}"))?;
    let p: u64 = p.trim().parse().map_err(|_| format!("bad prime {p:?}"))?;
    let spec = spec.trim();
    let cond = if spec == "ramified" {
        LocalCondition::Ramified
    } else if let Some(rest) = spec.strip_prefix('~') {
        LocalCondition::IfUnramified(parse_parts(rest)?)
    } else {
        LocalCondition::Unramified(parse_parts(spec)?)
    };
    Ok((p, cond))
}

impl CatalogArgs {
    fn load(&self) -> Result<Vec<NumberFieldRecord>, CliError> {
        let mut records = match (&self.input, self.height) {
            (Some(path), _) => {
                let file = File::open(path)
                    .map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?;
                let cat = load_catalog(io::BufReader::new(file))?;
                for d in &cat.diagnostics {
                    eprintln!("warning: {}:{}: {}", path.display(), d.row, d.message);
                }
                cat.records
            }
            (None, Some(h)) => enumerate_cubics(h)?,
            (None, None) => return Err(CliError::Usage("give --input or --height".into())),
        };
        if self.sn_only {
            records.retain(|r| r.group_tag != GroupTag::Unknown);
        }
        if !self.conditions.is_empty() || self.window.is_some() {
            let mut set = LocalConditionSet::new();
            for (p, c) in &self.conditions {
                set.insert(*p, c.clone())?;
            }
            let window = self.window.map(|x| DiscWindow { x, c1: self.c1 });
            records = filter_by_conditions(&records, &set, window)?;
        }
        Ok(records)
    }
}

#[derive(Debug, Args, Serialize)]
pub struct ScanArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub catalog: CatalogArgs,
    #[arg(long, default_value = "auto")]
    pub x: TruncationHeight,
}

#[derive(Debug, Args, Serialize)]
pub struct EnumerateArgs {
    #[arg(long)]
    pub height: i64,
    #[arg(long)]
    pub sn_only: bool,
}

#[derive(Debug, Args, Serialize)]
pub struct ChebotarevArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub catalog: CatalogArgs,
    /// Primes to test, comma separated.
    #[arg(long, value_delimiter = ',', required = true)]
    pub p: Vec<u64>,
    #[arg(long, default_value_t = crate::family_stats::DEFAULT_SIGMA_THRESHOLD)]
    pub sigma: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum MomentSourceKind {
    Model,
    Catalog,
}

#[derive(Debug, Args, Serialize)]
pub struct MomentsArgs {
    #[arg(long, value_enum, default_value = "model")]
    pub source: MomentSourceKind,
    #[command(flatten)]
    #[serde(flatten)]
    pub catalog: CatalogArgs,
    /// Symmetric group degree for the model.
    #[arg(long, default_value_t = 3)]
    pub n: u32,
    /// Deformation f(p): `0` or `1/p`.
    #[arg(long, default_value = "0")]
    pub f: Deformation,
    #[arg(long, default_value_t = 1000.0)]
    pub y: f64,
    #[arg(long = "x", default_value_t = 1e6)]
    pub x: f64,
    /// Moment orders, comma separated.
    #[arg(long, value_delimiter = ',', default_value = "1")]
    pub r: Vec<u32>,
    #[arg(long, default_value_t = 10_000)]
    pub samples: usize,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Forced {
    Identity,
    FullCycle,
}

#[derive(Debug, Args, Serialize)]
pub struct ModelArgs {
    #[arg(long, default_value_t = 3)]
    pub n: u32,
    #[arg(long, default_value = "0")]
    pub f: Deformation,
    #[arg(long = "x", default_value_t = 1e4)]
    pub x: f64,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    /// Assign this class at every prime instead of sampling.
    #[arg(long, value_enum)]
    pub force: Option<Forced>,
}

#[derive(Debug, Args, Serialize)]
pub struct OracleArgs {
    /// Most negative discriminant; all fundamental D in [dmin, -3] are used.
    #[arg(long, allow_hyphen_values = true, default_value_t = -5000)]
    pub dmin: i64,
    #[arg(long = "x", default_value_t = 1e5)]
    pub x: f64,
    /// Relative error above which a discriminant counts as a failure.
    #[arg(long, default_value_t = TRUNCATION_TOLERANCE)]
    pub tolerance: f64,
}

#[derive(Debug, Args, Serialize)]
pub struct InequalityArgs {
    #[arg(long, default_value_t = 16)]
    pub max2r: u32,
    #[arg(long, default_value_t = 1000.0)]
    pub y: f64,
}

#[derive(Debug, Args, Serialize)]
pub struct ConstantsArgs {
    /// Heights for Mertens products, comma separated.
    #[arg(
        long,
        value_delimiter = ',',
        default_value = "1000,10000,100000,1000000"
    )]
    pub y: Vec<f64>,
    /// Discriminant bound X for the exceptional-set budget.
    #[arg(long = "big-x", default_value_t = 1e6)]
    pub big_x: f64,
    #[arg(long, default_value_t = 1.0)]
    pub c_prime: f64,
    #[arg(long, default_value_t = 3)]
    pub n: u32,
}

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Math(Error),
    Io(io::Error),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::Csv(_) => CliError::Usage(e.to_string()),
            e => CliError::Math(e),
        }
    }
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        CliError::Io(e)
    }
}

/// A finished report: JSON value, optional CSV body, and whether every
/// property check in it held.
struct Output {
    report: Value,
    csv: Option<String>,
    ok: bool,
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("report types serialize")
}

fn csv_body(
    header: &[&str],
    rows: impl IntoIterator<Item = Vec<String>>,
) -> Result<String, CliError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header)
        .map_err(|e| CliError::Usage(e.to_string()))?;
    for r in rows {
        w.write_record(&r)
            .map_err(|e| CliError::Usage(e.to_string()))?;
    }
    Ok(String::from_utf8(w.into_inner().map_err(|e| CliError::Usage(e.to_string()))?).unwrap())
}

fn opt(v: Option<f64>) -> String {
    v.map(|x| x.to_string()).unwrap_or_default()
}

fn execute(cmd: &Command) -> Result<Output, CliError> {
    match cmd {
        Command::Estimate(a) => {
            let field = NumberFieldRecord::from_polynomial(a.poly.clone())?;
            let x = a.x.resolve(field.abs_disc());
            let est = match a.method {
                Method::Product => truncated_product_l1(&field, x)?,
                Method::LogSum => log_sum_l1(&field, x)?,
            };
            let csv = csv_body(
                &[
                    "poly",
                    "disc",
                    "x",
                    "value",
                    "log_value",
                    "heuristic_error",
                    "d",
                ],
                [vec![
                    field.poly.to_string(),
                    field.disc.to_string(),
                    est.truncation_height.to_string(),
                    est.value.to_string(),
                    est.log_value.to_string(),
                    est.heuristic_error.to_string(),
                    est.d.to_string(),
                ]],
            )?;
            Ok(Output {
                report: to_value(&est),
                csv: Some(csv),
                ok: true,
            })
        }
        Command::Scan(a) => {
            let records = a.catalog.load()?;
            let rep = scan_residues(&records, a.x)?;
            let csv = csv_body(
                &[
                    "poly",
                    "disc",
                    "r1",
                    "r2",
                    "x",
                    "estimate",
                    "heuristic_error",
                    "ratio_to_max_target",
                    "ratio_to_min_target",
                    "index_warned",
                    "within_envelope",
                ],
                rep.rows.iter().map(|r| {
                    vec![
                        r.poly.clone(),
                        r.disc.to_string(),
                        r.signature.0.to_string(),
                        r.signature.1.to_string(),
                        r.truncation_height.to_string(),
                        r.estimate.to_string(),
                        r.heuristic_error.to_string(),
                        opt(r.ratio_to_max_target),
                        opt(r.ratio_to_min_target),
                        r.index_warned.to_string(),
                        r.within_envelope.to_string(),
                    ]
                }),
            )?;
            Ok(Output {
                ok: rep.envelope_violations == 0,
                report: to_value(&rep),
                csv: Some(csv),
            })
        }
        Command::Enumerate(a) => {
            let mut records = enumerate_cubics(a.height)?;
            if a.sn_only {
                records.retain(|r| r.group_tag == GroupTag::SnHeuristic);
            }
            let mut buf = Vec::new();
            write_catalog(&records, &mut buf)?;
            Ok(Output {
                report: to_value(&records),
                csv: Some(String::from_utf8(buf).unwrap()),
                ok: true,
            })
        }
        Command::Chebotarev(a) => {
            let records = a.catalog.load()?;
            let reports =
                a.p.iter()
                    .map(|&p| chebotarev_densities(&records, p, a.sigma))
                    .collect::<Result<Vec<_>, _>>()?;
            let ok = reports.iter().all(|r| r.pass);
            let csv = csv_body(
                &[
                    "p",
                    "class",
                    "count",
                    "frequency",
                    "expected",
                    "sigma",
                    "z",
                    "within",
                ],
                reports.iter().flat_map(|r| {
                    r.classes.iter().map(move |c| {
                        vec![
                            r.p.to_string(),
                            c.class.to_string(),
                            c.count.to_string(),
                            c.frequency.to_string(),
                            c.expected.to_string(),
                            c.sigma.to_string(),
                            c.z.to_string(),
                            c.within.to_string(),
                        ]
                    })
                }),
            )?;
            Ok(Output {
                report: to_value(&reports),
                csv: Some(csv),
                ok,
            })
        }
        Command::Moments(a) => {
            let dist;
            let records;
            let source = match a.source {
                MomentSourceKind::Model => {
                    dist = ChebotarevDistribution::new(a.n, a.f)?;
                    MomentSource::Model {
                        dist: &dist,
                        samples: a.samples,
                        seed: a.seed,
                    }
                }
                MomentSourceKind::Catalog => {
                    records = a.catalog.load()?;
                    MomentSource::Catalog(&records)
                }
            };
            let reports = empirical_moments(source, a.y, a.x, &a.r)?;
            let ok = reports.iter().all(|r| r.status != MomentStatus::Fail);
            let csv = csv_body(
                &[
                    "source",
                    "d",
                    "y",
                    "x",
                    "r",
                    "sample_size",
                    "statistic",
                    "std_error",
                    "bound",
                    "slack",
                    "status",
                ],
                reports.iter().map(|m| {
                    vec![
                        m.source.clone(),
                        m.d.to_string(),
                        m.y.to_string(),
                        m.x.to_string(),
                        m.r.to_string(),
                        m.sample_size.to_string(),
                        m.statistic.to_string(),
                        m.std_error.to_string(),
                        opt(m.bound),
                        opt(m.slack),
                        to_value(&m.status).as_str().unwrap_or_default().to_string(),
                    ]
                }),
            )?;
            Ok(Output {
                report: to_value(&reports),
                csv: Some(csv),
                ok,
            })
        }
        Command::Model(a) => {
            let est = match a.force {
                Some(Forced::Identity) => {
                    l1_of_sample(&ModelSample::forced(&CycleType::identity(a.n), a.x), a.x)?
                }
                Some(Forced::FullCycle) => {
                    l1_of_sample(&ModelSample::forced(&CycleType::full_cycle(a.n), a.x), a.x)?
                }
                None => model_l1(&ChebotarevDistribution::new(a.n, a.f)?, a.x, a.seed)?,
            };
            let (lo, hi) = envelope_products(a.n - 1, a.x);
            let inside = est.value >= lo * (1.0 - 1e-12) && est.value <= hi * (1.0 + 1e-12);
            let report = json!({ "estimate": est, "lower_envelope": lo, "upper_envelope": hi, "within_envelope": inside });
            let csv = csv_body(
                &["n", "x", "value", "lower_envelope", "upper_envelope"],
                [vec![
                    a.n.to_string(),
                    a.x.to_string(),
                    est.value.to_string(),
                    lo.to_string(),
                    hi.to_string(),
                ]],
            )?;
            Ok(Output {
                report,
                csv: Some(csv),
                ok: inside,
            })
        }
        Command::Oracle(a) => {
            if a.dmin > -3 {
                return Err(CliError::Usage(format!("--dmin {} must be <= -3", a.dmin)));
            }
            let primes = crate::prime_poly::primes_below(a.x);
            let ds = fundamental_range(a.dmin);
            use rayon::prelude::*;
            let rows = ds
                .par_iter()
                .map(|&d| {
                    let c = compare_truncation_with_primes(d, a.x, &primes)?;
                    let h2 = class_number_by_character_sum(d)?;
                    Ok((c, h2))
                })
                .collect::<Result<Vec<_>, Error>>()?;
            let mismatched = rows.iter().filter(|(c, h2)| c.h != *h2).count();
            let over = rows
                .iter()
                .filter(|(c, _)| c.relative_error > a.tolerance)
                .count();
            let mut errs: Vec<f64> = rows.iter().map(|(c, _)| c.relative_error).collect();
            errs.sort_by(f64::total_cmp);
            let median = if errs.is_empty() {
                0.0
            } else if errs.len() % 2 == 1 {
                errs[errs.len() / 2]
            } else {
                0.5 * (errs[errs.len() / 2 - 1] + errs[errs.len() / 2])
            };
            let csv = csv_body(
                &["D", "h", "exact", "truncated", "rel_err"],
                rows.iter().map(|(c, _)| {
                    vec![
                        c.d.to_string(),
                        c.h.to_string(),
                        c.exact.to_string(),
                        c.truncated.to_string(),
                        c.relative_error.to_string(),
                    ]
                }),
            )?;
            let comparisons: Vec<_> = rows.iter().map(|(c, _)| c).collect();
            let report = json!({
                "count": rows.len(),
                "class_number_mismatches": mismatched,
                "over_tolerance": over,
                "median_relative_error": median,
                "rows": comparisons,
            });
            Ok(Output {
                report,
                csv: Some(csv),
                ok: mismatched == 0 && over == 0,
            })
        }
        Command::CheckInequalities(a) => {
            let sweep = composition_sweep(a.max2r, a.y)?;
            let csv = csv_body(
                &[
                    "two_r",
                    "compositions",
                    "composition_checks",
                    "ones_allowed_checks",
                    "passed",
                ],
                sweep.rows.iter().map(|r| {
                    vec![
                        r.two_r.to_string(),
                        r.compositions.to_string(),
                        r.composition_checks.to_string(),
                        r.ones_allowed_checks.to_string(),
                        r.passed.to_string(),
                    ]
                }),
            )?;
            Ok(Output {
                ok: sweep.all_pass(),
                report: to_value(&sweep),
                csv: Some(csv),
            })
        }
        Command::Constants(a) => {
            let c = constants();
            let gamma = c.euler_gamma;
            let mertens =
                a.y.iter()
                    .map(|&y| {
                        let m = mertens_product(y)?;
                        let ratio = m / (gamma.exp() * y.ln());
                        Ok(json!({ "y": y, "product": m, "ratio_to_e_gamma_log_y": ratio }))
                    })
                    .collect::<Result<Vec<_>, Error>>()?;
            let budget = exceptional_budget(a.big_x, a.c_prime, a.n, 1.0, 1.0)?;
            let csv = csv_body(
                &["name", "value"],
                std::iter::once(vec!["euler_gamma".to_string(), gamma.to_string()]).chain(
                    c.zeta_values
                        .iter()
                        .enumerate()
                        .map(|(i, z)| vec![format!("zeta({})", i + 2), z.to_string()]),
                ),
            )?;
            let report =
                json!({ "constants": c, "mertens": mertens, "exceptional_budget": budget });
            Ok(Output {
                report,
                csv: Some(csv),
                ok: true,
            })
        }
    }
}

fn render(cmd: &Command, format: Format, out: &Output) -> String {
    let config = json!({ "subcommand": cmd.name(), "format": format, "args": to_value(cmd).as_object().and_then(|o| o.values().next().cloned()) });
    match (format, &out.csv) {
        (Format::Csv, Some(body)) => format!(
            "# config: {}\n{body}",
            serde_json::to_string(&config).unwrap()
        ),
        _ => {
            let mut s =
                serde_json::to_string_pretty(&json!({ "config": config, "report": out.report }))
                    .unwrap();
            s.push('\n');
            s
        }
    }
}

/// Parse `args` (including the program name), run, and write the report.
/// Returns the process exit code: 0 on success, 1 for invalid invocations
/// or inputs, 2 when a property check in the report fails.
pub fn run<I, T>(args: I, stdout: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    let workers = resolve_workers(cli.workers);
    let pool = worker_pool(workers);
    log::debug!("running {} with {workers} workers", cli.command.name());
    let result = pool.install(|| execute(&cli.command));
    let out = match result {
        Ok(o) => o,
        Err(CliError::Usage(m)) => {
            eprintln!("error: {m}");
            return 1;
        }
        Err(CliError::Math(e)) => {
            eprintln!("error: {e}");
            return 1;
        }
        Err(CliError::Io(e)) => {
            eprintln!("error: {e}");
            return 1;
        }
    };
    let format = cli.format.unwrap_or_else(|| cli.command.default_format());
    let text = render(&cli.command, format, &out);
    let written = match &cli.out {
        Some(path) => std::fs::write(path, text.as_bytes()),
        None => stdout
            .write_all(text.as_bytes())
            .and_then(|_| stdout.flush()),
    };
    if let Err(e) = written {
        eprintln!("error: writing report: {e}");
        return 1;
    }
    if out.ok {
        0
    } else {
        eprintln!("property check failed; see report");
        2
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_capture(args: &[&str]) -> (i32, String) {
        let mut buf = Vec::new();
        let mut argv = vec!["residue"];
        argv.extend_from_slice(args);
        let code = run(argv, &mut buf);
        (code, String::from_utf8(buf).unwrap())
    }

    #[test]
    fn estimate_outputs_json() {
        let (code, out) = run_capture(&["estimate", "--poly", "-1,-1,0,1", "--x", "1e4"]);
        assert_eq!(code, 0);
        let v: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["report"]["truncation_height"], 10000.0);
        assert_eq!(v["report"]["d"], 2);
        assert_eq!(v["config"]["args"]["poly"], "x^3-x-1");
        assert!(v["config"].get("workers").is_none());
    }

    #[test]
    fn usage_errors_exit_one() {
        assert_eq!(run_capture(&["estimate"]).0, 1);
        assert_eq!(run_capture(&["frobnicate"]).0, 1);
        assert_eq!(run_capture(&["estimate", "--poly", "1,2"]).0, 1);
        assert_eq!(run_capture(&["scan"]).0, 1);
        assert_eq!(run_capture(&["--help"]).0, 0);
    }

    #[test]
    fn conditions_parse() {
        assert_eq!(
            parse_condition("2:ramified").unwrap(),
            (2, LocalCondition::Ramified)
        );
        assert_eq!(
            parse_condition("5:~1.1.1").unwrap(),
            (5, LocalCondition::IfUnramified(CycleType::identity(3)))
        );
        assert_eq!(
            parse_condition("7:3").unwrap(),
            (7, LocalCondition::Unramified(CycleType::full_cycle(3)))
        );
        assert!(parse_condition("7").is_err());
    }
}
