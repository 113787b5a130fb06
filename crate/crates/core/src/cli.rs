//! The `frl` command-line front end.
//!
//! Exit codes: `0` success, `2` invalid arguments or preconditions, `1`
//! computational failure (including a failed verification).

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::eigenfunction::{fourier_transform, root_certificate, CoefficientFile, EigenPlusFunction, DEFAULT_GRID_STEP};
use crate::error::Error;
use crate::higherdim::{bound_table, MAX_DIMENSION, MIN_DIMENSION};
use crate::lowerbound::{check_inequality, upsilon, verify as verify_lower_bound, LowerBoundConfig};
use crate::optimizer::{greedy_search, write_log, SearchConfig};
use crate::signpatterns::{hermite_sign_search, laguerre_sign_search, phi_sign_search, HermiteDegree, SignPattern};
use crate::specfun::hermite::psi;
use crate::verify::{criterion, run_all, CRITERIA};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");
/// Accepted `schema_version` of configuration files.
pub const CONFIG_SCHEMA_VERSION: u32 = 1;
/// Environment variable capping the worker count.
pub const THREADS_ENV: &str = "FRL_THREADS";

#[derive(Debug)]
pub enum CliError {
    /// Bad arguments or violated preconditions (exit 2).
    Invalid(String),
    /// The computation itself failed (exit 1).
    Compute(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Invalid(_) => 2,
            CliError::Compute(_) => 1,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Invalid(m) => write!(f, "invalid input: {m}"),
            CliError::Compute(m) => write!(f, "computation failed: {m}"),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::Domain(_) => CliError::Invalid(e.to_string()),
            _ => CliError::Compute(e.to_string()),
        }
    }
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        CliError::Compute(format!("i/o: {e}"))
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

#[derive(Parser, Debug)]
#[command(name = "frl", version, about = "Sign uncertainty for Fourier eigenfunctions: bounds, candidates and sign patterns")]
pub struct Cli {
    /// Write results here instead of standard output.
    #[arg(long, short, global = true)]
    pub output: Option<PathBuf>,

    /// Output format; each command has its own default.
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,

    /// JSON configuration file (schema version 1).
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// λ_d and the dimension-dependent bounds.
    LambdaTable(LambdaTableArgs),
    /// Root certificate of an eigenfunction expansion.
    Candidate(CandidateArgs),
    /// Greedy coordinate search that lowers the largest root.
    Optimize(OptimizeArgs),
    /// The one-dimensional lower-bound inequality.
    LowerBound(LowerBoundArgs),
    /// Sign patterns of Hermite, φ_n or Laguerre sequences at fixed points.
    SignSearch(SignSearchArgs),
    /// Compare an expansion with its Fourier transform computed by quadrature.
    FtCheck(FtCheckArgs),
    /// Dense samples of a function for external plotting.
    PlotData(PlotDataArgs),
    /// Run the acceptance suite.
    VerifyAll(VerifyAllArgs),
}

#[derive(Args, Debug, Serialize)]
pub struct LambdaTableArgs {
    #[arg(long, default_value_t = 2)]
    pub dmin: u32,
    #[arg(long, default_value_t = 9)]
    pub dmax: u32,
}

/// Where an expansion comes from.
#[derive(Args, Debug, Serialize)]
pub struct FunctionSource {
    /// Use the built-in degree-12 reference candidate (the default).
    #[arg(long, conflicts_with = "coeffs")]
    pub reference: bool,
    /// Coefficient file: `{"coeffs": [...], "basis": "unnormalized-H4n" | "psi"}`.
    #[arg(long)]
    pub coeffs: Option<PathBuf>,
    /// Reject expansions with `f(0) != 0`.
    #[arg(long)]
    pub normalize: bool,
}

impl FunctionSource {
    fn load(&self) -> CliResult<EigenPlusFunction> {
        match &self.coeffs {
            Some(path) => Ok(CoefficientFile::load(path)?.to_function(self.normalize)?),
            None => Ok(EigenPlusFunction::reference_candidate()),
        }
    }
}

#[derive(Args, Debug, Serialize)]
pub struct CandidateArgs {
    #[command(flatten)]
    pub source: FunctionSource,
    /// Include every root and local minimum, not only the summary.
    #[arg(long)]
    pub report: bool,
    #[arg(long, default_value_t = DEFAULT_GRID_STEP)]
    pub grid_step: f64,
}

#[derive(Args, Debug, Serialize)]
pub struct OptimizeArgs {
    #[command(flatten)]
    pub source: FunctionSource,
    #[arg(long)]
    pub max_index: Option<usize>,
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long)]
    pub min_step: Option<f64>,
    /// Write the accepted moves as JSON lines.
    #[arg(long)]
    pub log: Option<PathBuf>,
}

#[derive(Args, Debug, Serialize)]
pub struct LowerBoundArgs {
    #[arg(long = "A", default_value_t = 0.45)]
    pub a: f64,
    #[arg(long, default_value_t = 13.0 / 500.0)]
    pub tau: f64,
    /// Run the whole verification (grids, derivatives, kernel bounds) instead.
    #[arg(long)]
    pub full: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    Hermite,
    Phi,
    Laguerre,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
pub enum DegreeArg {
    #[value(name = "4n")]
    #[serde(rename = "4n")]
    FourN,
    #[value(name = "4n+2")]
    #[serde(rename = "4n+2")]
    FourNPlusTwo,
}

#[derive(Args, Debug, Serialize)]
pub struct SignSearchArgs {
    #[arg(long, value_enum)]
    pub family: Family,
    /// Comma-separated positive points.
    #[arg(long, value_delimiter = ',', required = true)]
    pub points: Vec<f64>,
    /// Signs such as `+,+,-` (Hermite only).
    #[arg(long, allow_hyphen_values = true)]
    pub pattern: Option<String>,
    #[arg(long, default_value_t = 0)]
    pub nmin: u64,
    #[arg(long)]
    pub nmax: Option<u64>,
    #[arg(long, value_enum, default_value = "4n")]
    pub degrees: DegreeArg,
    /// Laguerre parameter ν.
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    pub nu: f64,
}

#[derive(Args, Debug, Serialize)]
pub struct FtCheckArgs {
    #[command(flatten)]
    pub source: FunctionSource,
    #[arg(long, value_delimiter = ',', default_value = "0,0.3,0.59354,0.899,1.5")]
    pub points: Vec<f64>,
    #[arg(long, default_value_t = 1e-9)]
    pub tol: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum PlotFunction {
    Candidate,
    Upsilon,
    Psi,
}

#[derive(Args, Debug, Serialize)]
pub struct PlotDataArgs {
    #[arg(long, value_enum, default_value = "candidate")]
    pub function: PlotFunction,
    #[command(flatten)]
    pub source: FunctionSource,
    /// Kernel parameter for `upsilon`.
    #[arg(long = "A", default_value_t = 0.45)]
    pub a: f64,
    /// Index for `psi`.
    #[arg(long, default_value_t = 0)]
    pub n: u64,
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    pub from: f64,
    #[arg(long, default_value_t = 2.5, allow_hyphen_values = true)]
    pub to: f64,
    #[arg(long, default_value_t = 0.005)]
    pub step: f64,
}

#[derive(Args, Debug, Serialize)]
pub struct VerifyAllArgs {
    /// Run only this criterion.
    #[arg(long)]
    pub criterion: Option<u8>,
}

/// Contents of a `--config` file.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigFile {
    pub schema_version: u32,
    #[serde(default)]
    pub search: Option<SearchConfig>,
}

impl ConfigFile {
    pub fn parse(text: &str) -> CliResult<Self> {
        let cfg: ConfigFile =
            serde_json::from_str(text).map_err(|e| CliError::Invalid(format!("config file: {e}")))?;
        if cfg.schema_version != CONFIG_SCHEMA_VERSION {
            return Err(CliError::Invalid(format!(
                "config schema_version {} is not supported (expected {CONFIG_SCHEMA_VERSION})",
                cfg.schema_version
            )));
        }
        Ok(cfg)
    }

    pub fn load(path: &Path) -> CliResult<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Invalid(format!("cannot read config {}: {e}", path.display())))?;
        Self::parse(&text)
    }
}

/// Produced output: a JSON document or CSV text.
enum Output {
    Json(Value),
    Csv(String),
    Text(String),
}

/// Formats a float with 17 significant digits.
pub fn csv_float(x: f64) -> String {
    format!("{x:.16e}")
}

fn csv_table(header: &[&str], rows: impl IntoIterator<Item = Vec<String>>) -> String {
    let mut s = header.join(",");
    s.push('\n');
    for row in rows {
        s.push_str(&row.join(","));
        s.push('\n');
    }
    s
}

fn envelope(command: &str, config: Value, result: Value) -> Value {
    json!({ "version": VERSION, "command": command, "config": config, "result": result })
}

fn to_value<T: Serialize>(v: &T) -> CliResult<Value> {
    serde_json::to_value(v).map_err(|e| CliError::Compute(format!("serialization: {e}")))
}

fn configure_threads() -> CliResult<()> {
    let Ok(raw) = std::env::var(THREADS_ENV) else {
        return Ok(());
    };
    let n: usize = raw
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| CliError::Invalid(format!("{THREADS_ENV} must be a positive integer, got {raw:?}")))?;
    // a pool may already exist when called repeatedly in one process
    let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    Ok(())
}

fn lambda_table(args: &LambdaTableArgs, format: Format) -> CliResult<Output> {
    if args.dmin < MIN_DIMENSION || args.dmax > MAX_DIMENSION || args.dmin > args.dmax {
        return Err(CliError::Invalid(format!(
            "dimension range must satisfy {MIN_DIMENSION} <= dmin <= dmax <= {MAX_DIMENSION}"
        )));
    }
    let rows = bound_table(args.dmin, args.dmax)?;
    Ok(match format {
        Format::Csv => Output::Csv(csv_table(
            &["d", "lambda_d", "bound_new", "bound_bck", "bound_upper", "u_d"],
            rows.iter().map(|r| {
                vec![
                    r.d.to_string(),
                    csv_float(r.lambda_d),
                    csv_float(r.bound_new),
                    csv_float(r.bound_bck),
                    csv_float(r.bound_upper),
                    csv_float(r.u_d),
                ]
            }),
        )),
        Format::Json => Output::Json(envelope("lambda-table", to_value(args)?, to_value(&rows)?)),
    })
}

fn candidate(args: &CandidateArgs, format: Format) -> CliResult<Output> {
    if !(args.grid_step > 0.0) {
        return Err(CliError::Invalid("grid_step must be positive".into()));
    }
    let f = args.source.load()?;
    let cert = root_certificate(&f, args.grid_step, 1e-12)?;
    let near = cert
        .near_double_roots
        .iter()
        .min_by(|p, q| p.value.total_cmp(&q.value))
        .copied();
    let mut result = json!({
        "coefficients": f.coeffs(),
        "largest_root": cert.largest_root,
        "near_double_root": near.map(|m| m.location),
        "near_double_value": near.map(|m| m.value),
    });
    if args.report {
        result["certificate"] = to_value(&cert)?;
    }
    Ok(match format {
        Format::Json => Output::Json(envelope("candidate", to_value(args)?, result)),
        Format::Csv => Output::Csv(csv_table(
            &["kind", "x", "value"],
            cert.roots
                .iter()
                .map(|&r| vec!["root".into(), csv_float(r), csv_float(0.0)])
                .chain(cert.local_minima.iter().map(|m| vec!["local_minimum".into(), csv_float(m.location), csv_float(m.value)])),
        )),
    })
}

fn optimize(args: &OptimizeArgs, file: Option<&ConfigFile>, format: Format) -> CliResult<Output> {
    let mut cfg = file.and_then(|c| c.search.clone()).unwrap_or_default();
    if let Some(n) = args.max_index {
        cfg.max_index = n;
    }
    if let Some(s) = args.seed {
        cfg.seed = s;
    }
    if let Some(m) = args.min_step {
        cfg.min_step = m;
    }
    cfg.validate()?;
    let start = args.source.load()?;
    let out = greedy_search(&start, &cfg)?;
    if let Some(path) = &args.log {
        write_log(&out.log, BufWriter::new(File::create(path)?))?;
    }
    Ok(match format {
        Format::Json => {
            let config = json!({ "source": to_value(&args.source)?, "search": to_value(&cfg)? });
            Output::Json(envelope("optimize", config, to_value(&out)?))
        }
        Format::Csv => Output::Csv(csv_table(
            &["pass", "coordinate", "step", "objective"],
            out.log.iter().map(|e| {
                vec![
                    e.pass.to_string(),
                    e.coordinate.map(|c| c.to_string()).unwrap_or_default(),
                    csv_float(e.step),
                    csv_float(e.objective),
                ]
            }),
        )),
    })
}

fn lower_bound(args: &LowerBoundArgs, format: Format) -> CliResult<Output> {
    if args.full {
        let cfg = LowerBoundConfig::default();
        let report = verify_lower_bound(&cfg)?;
        return Ok(match format {
            Format::Json => Output::Json(envelope("lower-bound", to_value(&cfg)?, to_value(&report)?)),
            Format::Csv => Output::Csv(csv_table(
                &["a", "tau", "h1", "h2", "sup_term", "margin", "holds"],
                report.margins.iter().map(|m| {
                    vec![csv_float(m.a), csv_float(m.tau), csv_float(m.h1), csv_float(m.h2), csv_float(m.sup_term), csv_float(m.margin), m.holds.to_string()]
                }),
            )),
        });
    }
    let r = check_inequality(args.a, args.tau)?;
    Ok(match format {
        Format::Json => {
            let mut result = to_value(&r)?;
            result["status"] = json!(if r.holds { "holds" } else { "fails" });
            Output::Json(envelope("lower-bound", to_value(args)?, result))
        }
        Format::Csv => Output::Csv(csv_table(
            &["a", "tau", "h1", "h2", "sup_term", "margin", "holds"],
            [vec![csv_float(r.a), csv_float(r.tau), csv_float(r.h1), csv_float(r.h2), csv_float(r.sup_term), csv_float(r.margin), r.holds.to_string()]],
        )),
    })
}

fn sign_search(args: &SignSearchArgs, format: Format) -> CliResult<Output> {
    let result = match args.family {
        Family::Hermite => {
            let pattern: SignPattern = match &args.pattern {
                Some(p) => p.parse()?,
                None => return Err(CliError::Invalid("--pattern is required for the hermite family".into())),
            };
            let degrees = match args.degrees {
                DegreeArg::FourN => HermiteDegree::FourN,
                DegreeArg::FourNPlusTwo => HermiteDegree::FourNPlusTwo,
            };
            hermite_sign_search(&args.points, &pattern, degrees, args.nmin, args.nmax.unwrap_or(5000))?
        }
        Family::Phi => phi_sign_search(&args.points, args.nmax.unwrap_or(500))?,
        Family::Laguerre => laguerre_sign_search(args.nu, &args.points, args.nmax.unwrap_or(2000))?,
    };
    Ok(match format {
        Format::Json => Output::Json(envelope("sign-search", to_value(args)?, to_value(&result)?)),
        Format::Csv => Output::Csv(csv_table(
            &["kind", "n"],
            result
                .matches
                .iter()
                .map(|n| vec!["match".to_string(), n.to_string()])
                .chain(result.predictor_matches.iter().map(|n| vec!["predictor".to_string(), n.to_string()]))
                .chain(result.uncertain.iter().map(|n| vec!["uncertain".to_string(), n.to_string()])),
        )),
    })
}

fn ft_check(args: &FtCheckArgs, format: Format) -> CliResult<Output> {
    let f = args.source.load()?;
    let rows = args
        .points
        .iter()
        .map(|&y| {
            let fy = f.eval(y);
            let ft = fourier_transform(&f, y, args.tol)?;
            Ok((y, fy, ft))
        })
        .collect::<crate::Result<Vec<_>>>()?;
    let max_diff = rows.iter().map(|(_, a, b)| (a - b).abs()).fold(0.0, f64::max);
    Ok(match format {
        Format::Json => {
            let points: Vec<Value> = rows
                .iter()
                .map(|(y, a, b)| json!({ "y": y, "f": a, "fourier": b, "difference": b - a }))
                .collect();
            Output::Json(envelope("ft-check", to_value(args)?, json!({ "points": points, "max_difference": max_diff })))
        }
        Format::Csv => Output::Csv(csv_table(
            &["y", "f", "fourier", "difference"],
            rows.iter().map(|(y, a, b)| vec![csv_float(*y), csv_float(*a), csv_float(*b), csv_float(b - a)]),
        )),
    })
}

/// Sign changes of sampled values, refined by bisection.
fn sampled_roots(g: &dyn Fn(f64) -> f64, xs: &[f64], vs: &[f64]) -> Vec<f64> {
    let mut roots = Vec::new();
    for i in 0..xs.len().saturating_sub(1) {
        if vs[i] == 0.0 {
            roots.push(xs[i]);
            continue;
        }
        if vs[i] * vs[i + 1] < 0.0 {
            let (mut a, mut b) = (xs[i], xs[i + 1]);
            let sa = vs[i] > 0.0;
            for _ in 0..100 {
                let m = 0.5 * (a + b);
                if (g(m) > 0.0) == sa {
                    a = m;
                } else {
                    b = m;
                }
            }
            roots.push(0.5 * (a + b));
        }
    }
    roots
}

fn plot_data(args: &PlotDataArgs, format: Format) -> CliResult<Output> {
    if !(args.step > 0.0 && args.from.is_finite() && args.to.is_finite() && args.from <= args.to) {
        return Err(CliError::Invalid("plot range needs from <= to and step > 0".into()));
    }
    let count = ((args.to - args.from) / args.step + 1e-9).floor() as usize + 1;
    let xs: Vec<f64> = (0..count).map(|i| args.from + i as f64 * args.step).collect();
    let candidate = match args.function {
        PlotFunction::Candidate => Some(args.source.load()?),
        _ => None,
    };
    if args.function == PlotFunction::Upsilon && !(args.a > 0.0 && args.a <= 0.5) {
        return Err(CliError::Invalid(format!("A must lie in (0, 1/2], got {}", args.a)));
    }
    let (a, n) = (args.a, args.n);
    let g: Box<dyn Fn(f64) -> f64> = match (&candidate, args.function) {
        (Some(f), _) => Box::new(move |x| f.eval(x)),
        (None, PlotFunction::Upsilon) => Box::new(move |x| upsilon(a, x)),
        _ => Box::new(move |x| psi(n, x)),
    };
    let vs: Vec<f64> = xs.iter().map(|&x| g(x)).collect();
    let roots = match &candidate {
        Some(f) => {
            let cert = root_certificate(f, DEFAULT_GRID_STEP, 1e-12)?;
            // roots are certified on x ≥ 0; mirror for negative ranges
            let mut all: Vec<f64> = cert.roots.iter().flat_map(|&r| [-r, r]).collect();
            all.sort_by(f64::total_cmp);
            all.retain(|&r| r >= args.from && r <= args.to);
            all
        }
        None => sampled_roots(&g, &xs, &vs),
    };
    Ok(match format {
        Format::Csv => {
            let mut s = csv_table(&["x", "value"], xs.iter().zip(&vs).map(|(x, v)| vec![csv_float(*x), csv_float(*v)]));
            s.push('\n');
            s.push_str(&csv_table(&["root"], roots.iter().map(|r| vec![csv_float(*r)])));
            Output::Csv(s)
        }
        Format::Json => {
            let points: Vec<[f64; 2]> = xs.iter().zip(&vs).map(|(x, v)| [*x, *v]).collect();
            Output::Json(envelope("plot-data", to_value(args)?, json!({ "points": points, "roots": roots })))
        }
    })
}

fn verify_all(args: &VerifyAllArgs, format: Option<Format>) -> CliResult<(Output, bool)> {
    let reports = match args.criterion {
        Some(id) => vec![criterion(id).ok_or_else(|| {
            CliError::Invalid(format!("criterion must be one of {CRITERIA:?}, got {id}"))
        })?],
        None => run_all(),
    };
    let ok = reports.iter().all(|r| r.passed);
    let out = match format {
        Some(Format::Json) => Output::Json(envelope("verify-all", to_value(args)?, to_value(&reports)?)),
        Some(Format::Csv) => Output::Csv(csv_table(
            &["criterion", "check", "passed"],
            reports
                .iter()
                .flat_map(|r| r.checks.iter().map(move |c| vec![r.id.to_string(), c.name.replace(',', ";"), c.passed.to_string()])),
        )),
        None => Output::Text(reports.iter().map(|r| format!("{r}\n")).collect()),
    };
    Ok((out, ok))
}

fn emit(out: Output, path: Option<&Path>, stdout: &mut dyn Write) -> CliResult<()> {
    let text = match out {
        Output::Json(v) => {
            let mut s = serde_json::to_string_pretty(&v).map_err(|e| CliError::Compute(e.to_string()))?;
            s.push('\n');
            s
        }
        Output::Csv(s) | Output::Text(s) => s,
    };
    match path {
        Some(p) => std::fs::write(p, text)?,
        None => stdout.write_all(text.as_bytes())?,
    }
    Ok(())
}

/// Runs a parsed command, writing to `stdout` unless `--output` is given.
pub fn run(cli: &Cli, stdout: &mut dyn Write) -> CliResult<()> {
    configure_threads()?;
    let file = cli.config.as_deref().map(ConfigFile::load).transpose()?;
    let json = cli.format.unwrap_or(Format::Json);
    let (out, ok) = match &cli.command {
        Command::LambdaTable(a) => (lambda_table(a, cli.format.unwrap_or(Format::Csv))?, true),
        Command::Candidate(a) => (candidate(a, json)?, true),
        Command::Optimize(a) => (optimize(a, file.as_ref(), json)?, true),
        Command::LowerBound(a) => (lower_bound(a, json)?, true),
        Command::SignSearch(a) => (sign_search(a, json)?, true),
        Command::FtCheck(a) => (ft_check(a, json)?, true),
        Command::PlotData(a) => (plot_data(a, cli.format.unwrap_or(Format::Csv))?, true),
        Command::VerifyAll(a) => verify_all(a, cli.format)?,
    };
    emit(out, cli.output.as_deref(), stdout)?;
    if ok {
        Ok(())
    } else {
        Err(CliError::Compute("at least one acceptance criterion failed".into()))
    }
}

/// Parses `argv` (including the program name), runs it and returns the exit code.
pub fn dispatch<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => 0,
                _ => 2,
            };
        }
    };
    match run(&cli, &mut io::stdout().lock()) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("frl: {e}");
            e.exit_code()
        }
    }
}
