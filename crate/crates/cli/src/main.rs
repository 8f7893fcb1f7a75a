//! Command-line surface for the approximation library: node dumps,
//! pointwise evaluation, error sweeps over the reference grid, theoretical
//! convergence rates, verification checks, and plot-ready series.
//!
//! Exit codes: 0 success, 1 verification/runtime failure, 2 usage or
//! parameter error.

mod checks;
mod render;

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use ganelius::approximant::{build_ganelius, build_sesinc, Approximant, Scheme};
use ganelius::corpus::{test_function, TestFunction, BUILTIN_IDS};
use ganelius::numerics::dd::Dd;
use ganelius::numerics::{Precision, Real, UnitPoint};
use ganelius::sampling::{ganelius_nodes, transform_nodes};
use ganelius::verify::{default_n_list, error_sweep, point_label, ErrorReport, PaperGrid};

/// Environment variable overriding the default `--precision`.
const PRECISION_ENV: &str = "GANELIUS_PRECISION";

/// Failed invocation with its exit code: 2 for usage/parameter problems,
/// 1 for runtime failures.
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Failure { code: 2, message: message.into() }
    }

    fn runtime(message: impl Into<String>) -> Self {
        Failure { code: 1, message: message.into() }
    }
}

impl From<ganelius::Error> for Failure {
    fn from(e: ganelius::Error) -> Self {
        Failure::usage(e.to_string())
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::runtime(e.to_string())
    }
}

#[derive(Parser)]
#[command(
    name = "ganelius",
    version,
    about = "Optimal-rate approximation of analytic functions on (-1,1) \
             with algebraic endpoint decay"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Dump the sampling points and formula coefficients as CSV
    Nodes(NodesArgs),
    /// Evaluate a function and its approximant pointwise
    Approx(ApproxArgs),
    /// Maximum-error sweep over the evaluation grid
    Sweep(SweepArgs),
    /// Theoretical per-square-step error ratios of the built-in functions
    Rates(RatesArgs),
    /// Numerical verification checks; exits 1 if any check fails
    Verify(VerifyArgs),
    /// (sqrt(N), log10 error) series for semilog convergence plots
    Plotdata(PlotdataArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SchemeSel {
    Ganelius,
    Sesinc,
    Both,
}

impl SchemeSel {
    fn list(self) -> Vec<Scheme> {
        match self {
            SchemeSel::Ganelius => vec![Scheme::Ganelius],
            SchemeSel::Sesinc => vec![Scheme::Sesinc],
            SchemeSel::Both => vec![Scheme::Ganelius, Scheme::Sesinc],
        }
    }
}

#[derive(Args)]
struct NodesArgs {
    /// Number of sampling points per half of (-1,1)
    #[arg(long = "N")]
    n: u32,
    /// Decay-rate parameter r (alternative to --d/--mu)
    #[arg(long)]
    r: Option<String>,
    /// Opening angle d of the analyticity region; with --mu, r = d*mu/pi
    #[arg(long)]
    d: Option<String>,
    /// Endpoint decay order mu (goes with --d)
    #[arg(long)]
    mu: Option<String>,
    /// Working precision: binary64 or extended
    #[arg(long)]
    precision: Option<String>,
    /// Output path (stdout when omitted)
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct ApproxArgs {
    /// Function id: f1..f5
    #[arg(long)]
    function: String,
    /// Scheme to evaluate
    #[arg(long, value_enum, default_value_t = SchemeSel::Ganelius)]
    scheme: SchemeSel,
    /// Number of sampling points per half
    #[arg(long = "N")]
    n: u32,
    /// Override the shape exponent nu (default: ceil(mu/2), shifted off
    /// integers)
    #[arg(long)]
    nu: Option<String>,
    /// Evaluation point in (-1,1); repeatable
    #[arg(long, allow_hyphen_values = true)]
    x: Vec<String>,
    /// Named evaluation grid: "paper" (1999 interior + 234 near-endpoint
    /// points) or "uniform:<n>" (n equispaced interior points)
    #[arg(long)]
    grid: Option<String>,
    /// Working precision: binary64 or extended
    #[arg(long)]
    precision: Option<String>,
    /// Output path (stdout when omitted)
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct SweepArgs {
    /// Function id: f1..f5
    #[arg(long)]
    function: String,
    /// Scheme(s) to sweep
    #[arg(long, value_enum, default_value_t = SchemeSel::Both)]
    scheme: SchemeSel,
    /// Comma-separated N list (default: the squares 4,9,...,144)
    #[arg(long = "N")]
    n: Option<String>,
    /// Override the shape exponent nu
    #[arg(long)]
    nu: Option<String>,
    /// Working precision: binary64 or extended
    #[arg(long)]
    precision: Option<String>,
    /// Output format
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
    /// Output path (stdout when omitted)
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct RatesArgs {
    /// Restrict to one function id (default: all five)
    #[arg(long)]
    function: Option<String>,
    /// Output format
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
    /// Output path (stdout when omitted)
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    /// Check to run (repeatable): ganelius-bound, j-bound, cardinal,
    /// blaschke. Default: all.
    #[arg(long)]
    check: Vec<String>,
    /// Restrict ganelius-bound to a single r
    #[arg(long)]
    r: Option<f64>,
    /// Comma-separated N list for the cardinal check (default 4,16,64)
    #[arg(long = "N")]
    n: Option<String>,
    /// Restrict the cardinal check to one function id
    #[arg(long)]
    function: Option<String>,
    /// Working precision for the cardinal check
    #[arg(long)]
    precision: Option<String>,
    /// Output path (stdout when omitted)
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct PlotdataArgs {
    /// Function id: f1..f5
    #[arg(long)]
    function: String,
    /// Scheme(s) to include
    #[arg(long, value_enum, default_value_t = SchemeSel::Both)]
    scheme: SchemeSel,
    /// Comma-separated N list (default: the squares 4,9,...,144); an empty
    /// list yields an empty file
    #[arg(long = "N")]
    n: Option<String>,
    /// Working precision: binary64 or extended
    #[arg(long)]
    precision: Option<String>,
    /// Output path (stdout when omitted)
    #[arg(long)]
    out: Option<PathBuf>,
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode, Failure> {
    match cli.cmd {
        Cmd::Nodes(a) => {
            let text = match effective_precision(a.precision.as_deref())? {
                Precision::Binary64 => cmd_nodes::<f64>(&a)?,
                Precision::Extended => cmd_nodes::<Dd>(&a)?,
            };
            write_output(a.out.as_deref(), &text)?;
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Approx(a) => {
            let text = match effective_precision(a.precision.as_deref())? {
                Precision::Binary64 => cmd_approx::<f64>(&a)?,
                Precision::Extended => cmd_approx::<Dd>(&a)?,
            };
            write_output(a.out.as_deref(), &text)?;
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Sweep(a) => {
            let reports = match effective_precision(a.precision.as_deref())? {
                Precision::Binary64 => cmd_sweep::<f64>(&a)?,
                Precision::Extended => cmd_sweep::<Dd>(&a)?,
            };
            let text = match a.format {
                Format::Csv => render::reports_csv(&reports),
                Format::Json => render::reports_json(&reports)?,
            };
            write_output(a.out.as_deref(), &text)?;
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Rates(a) => {
            let text = cmd_rates(&a)?;
            write_output(a.out.as_deref(), &text)?;
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Verify(a) => {
            let (text, pass) = cmd_verify(&a)?;
            write_output(a.out.as_deref(), &text)?;
            Ok(if pass { ExitCode::SUCCESS } else { ExitCode::from(1) })
        }
        Cmd::Plotdata(a) => {
            let text = match effective_precision(a.precision.as_deref())? {
                Precision::Binary64 => cmd_plotdata::<f64>(&a)?,
                Precision::Extended => cmd_plotdata::<Dd>(&a)?,
            };
            write_output(a.out.as_deref(), &text)?;
            Ok(ExitCode::SUCCESS)
        }
    }
}

/// Flag value if given, else the environment override, else binary64.
fn effective_precision(flag: Option<&str>) -> Result<Precision, Failure> {
    let source = match flag {
        Some(s) => s.to_string(),
        None => match std::env::var(PRECISION_ENV) {
            Ok(v) if !v.is_empty() => v,
            _ => return Ok(Precision::Binary64),
        },
    };
    Precision::from_str(&source).map_err(|e| Failure::usage(e.to_string()))
}

fn parse_real<R: Real>(name: &str, s: &str) -> Result<R, Failure> {
    R::parse(s).ok_or_else(|| Failure::usage(format!("invalid value for --{name}: '{s}'")))
}

/// "4,9,16" -> [4, 9, 16]; None -> the default square list; "" -> [].
fn parse_n_list(arg: Option<&str>) -> Result<Vec<u32>, Failure> {
    match arg {
        None => Ok(default_n_list()),
        Some(s) => s
            .split(',')
            .map(str::trim)
            .filter(|t| !t.is_empty())
            .map(|t| {
                t.parse::<u32>()
                    .map_err(|_| Failure::usage(format!("invalid value in --N list: '{t}'")))
            })
            .collect(),
    }
}

fn write_output(path: Option<&Path>, text: &str) -> std::io::Result<()> {
    match path {
        Some(p) => std::fs::write(p, text),
        None => {
            use std::io::Write;
            std::io::stdout().write_all(text.as_bytes())
        }
    }
}

fn cmd_nodes<R: Real>(a: &NodesArgs) -> Result<String, Failure> {
    let (r, d) = match (&a.r, &a.d, &a.mu) {
        (Some(r), None, None) => (parse_real::<R>("r", r)?, R::frac_pi_2()),
        (None, Some(d), Some(mu)) => {
            let d = parse_real::<R>("d", d)?;
            let mu = parse_real::<R>("mu", mu)?;
            (d * mu / R::pi(), d)
        }
        _ => {
            return Err(Failure::usage(
                "provide either --r, or --d together with --mu (then r = d*mu/pi)",
            ))
        }
    };
    let nodes = ganelius_nodes(a.n, r)?;
    let tn = transform_nodes(&nodes, d)?;
    let mut out = String::from("k,a_k,b_k,beta_k,sigma_sign,sigma_logmag\n");
    for k in 1..=(a.n as i32) {
        let i = (k - 1) as usize;
        out.push_str(&format!(
            "{},{},{},{},{},{}\n",
            k,
            Real::format_sig(nodes.a[i]),
            point_label(tn.b(k)),
            point_label(tn.beta(k)),
            tn.sigma[i].sign,
            Real::format_sig(tn.sigma[i].logmag),
        ));
    }
    Ok(out)
}

fn build_approximant<R: Real>(
    f: &TestFunction<R>,
    scheme: Scheme,
    n: u32,
    nu_flag: Option<&str>,
) -> Result<Approximant<R>, Failure> {
    let nu = match nu_flag {
        Some(s) => parse_real::<R>("nu", s)?,
        None => f.nu_default,
    };
    Ok(match scheme {
        Scheme::Ganelius => Approximant::Ganelius(build_ganelius(f, f.params, nu, n)?),
        Scheme::Sesinc => Approximant::Sesinc(build_sesinc(f, f.params, n)?),
    })
}

fn cmd_approx<R: Real>(a: &ApproxArgs) -> Result<String, Failure> {
    let scheme = match a.scheme {
        SchemeSel::Both => {
            return Err(Failure::usage(
                "approx evaluates one scheme; pass --scheme ganelius or --scheme sesinc",
            ))
        }
        SchemeSel::Ganelius => Scheme::Ganelius,
        SchemeSel::Sesinc => Scheme::Sesinc,
    };
    let f = test_function::<R>(&a.function)?;
    let approx = build_approximant(&f, scheme, a.n, a.nu.as_deref())?;

    let points: Vec<UnitPoint<R>> = match (&a.x[..], &a.grid) {
        (xs, None) if !xs.is_empty() => xs
            .iter()
            .map(|s| parse_real::<R>("x", s).map(UnitPoint::interior))
            .collect::<Result<_, _>>()?,
        ([], Some(g)) if g == "paper" => PaperGrid::new().points().collect(),
        ([], Some(g)) => match g.strip_prefix("uniform:").and_then(|t| t.parse::<u32>().ok()) {
            Some(n) if n > 0 => (1..=n)
                .map(|i| {
                    // n equispaced points strictly inside (−1, 1)
                    let x = -1.0 + 2.0 * f64::from(i) / (f64::from(n) + 1.0);
                    UnitPoint::interior(R::from_f64(x))
                })
                .collect(),
            _ => {
                return Err(Failure::usage(format!(
                    "unknown grid '{g}' (expected 'paper' or 'uniform:<n>')"
                )))
            }
        },
        _ => {
            return Err(Failure::usage(
                "provide --x at least once, or --grid paper (not both)",
            ))
        }
    };

    let mut out = String::from("x,f,approx,abs_error\n");
    for p in points {
        let fv = f.eval(p);
        let av = approx.eval(p);
        out.push_str(&format!(
            "{},{},{},{}\n",
            point_label(p),
            Real::format_sig(fv),
            Real::format_sig(av),
            Real::format_sig((fv - av).abs()),
        ));
    }
    Ok(out)
}

fn cmd_sweep<R: Real>(a: &SweepArgs) -> Result<Vec<ErrorReport>, Failure> {
    let f = test_function::<R>(&a.function)?;
    let n_list = parse_n_list(a.n.as_deref())?;
    let nu_override = match &a.nu {
        Some(s) => Some(parse_real::<R>("nu", s)?),
        None => None,
    };
    a.scheme
        .list()
        .into_iter()
        .map(|s| error_sweep(&f, s, &n_list, nu_override).map_err(Failure::from))
        .collect()
}

fn cmd_rates(a: &RatesArgs) -> Result<String, Failure> {
    let ids: Vec<&str> = match &a.function {
        Some(id) => {
            // validate the id through the corpus
            test_function::<f64>(id)?;
            vec![BUILTIN_IDS
                .iter()
                .copied()
                .find(|b| b == id)
                .expect("validated above")]
        }
        None => BUILTIN_IDS.to_vec(),
    };
    let rows: Vec<render::RateRow> = ids
        .into_iter()
        .map(|id| {
            let f = test_function::<f64>(id).expect("built-in id");
            render::RateRow::new(id, f.params.d, f.params.mu)
        })
        .collect();
    match a.format {
        Format::Csv => Ok(render::rates_csv(&rows)),
        Format::Json => render::rates_json(&rows),
    }
}

fn cmd_verify(a: &VerifyArgs) -> Result<(String, bool), Failure> {
    const ALL: [&str; 4] = ["ganelius-bound", "j-bound", "cardinal", "blaschke"];
    let selected: Vec<&str> = if a.check.is_empty() {
        ALL.to_vec()
    } else {
        a.check.iter().map(String::as_str).collect()
    };
    for c in &selected {
        if !ALL.contains(c) {
            return Err(Failure::usage(format!(
                "unknown check '{c}' (expected one of {})",
                ALL.join(", ")
            )));
        }
    }

    let cardinal_ns = match a.n.as_deref() {
        None => vec![4, 16, 64],
        Some(s) => parse_n_list(Some(s))?,
    };
    let cardinal_fns: Vec<&str> = match &a.function {
        Some(id) => {
            test_function::<f64>(id)?;
            vec![BUILTIN_IDS
                .iter()
                .copied()
                .find(|b| b == id)
                .expect("validated above")]
        }
        None => BUILTIN_IDS.to_vec(),
    };
    let precision = effective_precision(a.precision.as_deref())?;

    let mut results = Vec::new();
    for c in selected {
        match c {
            "ganelius-bound" => results.extend(checks::ganelius_bound(a.r)),
            "j-bound" => results.push(checks::j_domination()),
            "cardinal" => {
                results.extend(checks::cardinal(&cardinal_fns, &cardinal_ns, precision))
            }
            "blaschke" => results.extend(checks::blaschke()),
            _ => unreachable!(),
        }
    }
    let pass = results.iter().all(|r| r.pass);
    let text = render::checks_json(&results, pass)?;
    Ok((text, pass))
}

fn cmd_plotdata<R: Real>(a: &PlotdataArgs) -> Result<String, Failure> {
    let n_list = parse_n_list(a.n.as_deref())?;
    if n_list.is_empty() {
        return Ok(String::new());
    }
    let f = test_function::<R>(&a.function)?;
    let mut out = String::from("scheme,sqrt_N,log10_error\n");
    for scheme in a.scheme.list() {
        let report = error_sweep(&f, scheme, &n_list, None)?;
        for row in &report.rows {
            out.push_str(&format!(
                "{},{},{}\n",
                scheme,
                Real::format_sig(f64::from(row.n).sqrt()),
                Real::format_sig(row.max_error.log10()),
            ));
        }
    }
    Ok(out)
}
