use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::Context;
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use samlab::error::Error;
use samlab::harness::{
    default_probes, fit_classification, fit_measures, run_suite, MapRegistry, MeasureMapKind, Suite, SuiteConfig,
};
use samlab::io;
use samlab::lp::{lp_first_variation, relative_step, richardson_variation};
use samlab::measure::{lp_surface_measure, pushforward_contra, surface_measure, SurfaceVariant};
use samlab::polytope::apply_map;

const SEED_VAR: &str = "SAMLAB_SEED";

#[derive(Parser, Debug)]
#[command(name = "samlab", version, about = "Surface area measures of polytopes and their identities")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Compute S, S*, S° or S_p of a polytope file.
    Measure {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, value_enum, default_value = "S")]
        variant: Variant,
        /// Exponent for `--variant Sp`.
        #[arg(long, allow_hyphen_values = true)]
        p: Option<f64>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Apply an invertible map to a polytope, or push a measure forward
    /// contravariantly with degree p.
    Transform {
        #[arg(long = "in")]
        input: PathBuf,
        /// Matrix literal such as `[[1,1,0],[0,1,0],[0,0,1]]`, or a file holding one.
        #[arg(long)]
        map: String,
        /// Degree for measure input; defaults to the `p` stored in the file, else 1.
        #[arg(long, allow_hyphen_values = true)]
        p: Option<f64>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// L_p mixed volume of two origin-interior polytopes, with a Richardson
    /// finite-difference estimate.
    Variation {
        #[arg(long = "body")]
        body: PathBuf,
        #[arg(long = "dir")]
        dir: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        p: f64,
        #[arg(long, default_value_t = 1e-4)]
        eps: f64,
        /// Skip the finite-difference estimate.
        #[arg(long)]
        no_fd: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run verification suites and write the report.
    Check(CheckArgs),
    /// Fit a candidate map against the classification basis.
    Fit {
        /// Combination such as `2*S + 3*S(-)`, or a registered map name.
        #[arg(long, conflicts_with = "bundle", required_unless_present = "bundle")]
        candidate: Option<String>,
        /// Probe bundle `{"probes":[{"polytope":..,"measure":..}]}`.
        #[arg(long)]
        bundle: Option<PathBuf>,
        #[arg(long, allow_hyphen_values = true)]
        p: f64,
        #[arg(long, default_value_t = 3)]
        n: usize,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(clap::Args, Debug)]
struct CheckArgs {
    /// Comma-separated suite names, or `all`.
    #[arg(long)]
    suite: Option<String>,
    /// JSON config file; flags given on the command line override it.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long, value_delimiter = ',')]
    n: Option<Vec<usize>>,
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    p: Option<Vec<f64>>,
    #[arg(long)]
    trials: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long, value_delimiter = ',')]
    lambda: Option<Vec<String>>,
    #[arg(long, value_delimiter = ',')]
    s: Option<Vec<String>>,
    #[arg(long)]
    pairs: Option<usize>,
    #[arg(long)]
    tol_exact: Option<f64>,
    #[arg(long)]
    tol_float: Option<f64>,
    #[arg(long)]
    tol_fd: Option<f64>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Variant {
    #[value(name = "S")]
    S,
    #[value(name = "Sstar")]
    Sstar,
    #[value(name = "So")]
    So,
    #[value(name = "Sp")]
    Sp,
}

#[derive(Debug)]
struct Usage(String);

impl std::fmt::Display for Usage {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "CONFIG_INVALID: {}", self.0)
    }
}

impl std::error::Error for Usage {}

fn usage(msg: impl Into<String>) -> anyhow::Error {
    Usage(msg.into()).into()
}

fn read(path: &Path) -> anyhow::Result<String> {
    fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

fn emit(text: &str, out: Option<&Path>) -> anyhow::Result<()> {
    match out {
        Some(path) => fs::write(path, format!("{text}\n")).with_context(|| format!("cannot write {}", path.display())),
        None => {
            let mut stdout = std::io::stdout().lock();
            match writeln!(stdout, "{text}").and_then(|_| stdout.flush()) {
                Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => Err(e.into()),
                _ => Ok(()),
            }
        }
    }
}

fn env_seed() -> anyhow::Result<Option<u64>> {
    match std::env::var(SEED_VAR) {
        Ok(s) => s
            .trim()
            .parse()
            .map(Some)
            .map_err(|_| usage(format!("{SEED_VAR}={s:?} is not an unsigned integer"))),
        Err(_) => Ok(None),
    }
}

fn cmd_measure(input: &Path, variant: Variant, p: Option<f64>, out: Option<&Path>) -> anyhow::Result<()> {
    let poly = io::polytope_from_str(&read(input)?)?;
    let text = match (variant, p) {
        (Variant::Sp, Some(p)) => {
            if !p.is_finite() {
                return Err(usage(format!("exponent {p} is not finite")));
            }
            io::measure_to_string(&lp_surface_measure(&poly, p), Some(p))
        }
        (Variant::Sp, None) => return Err(usage("--variant Sp needs --p")),
        (_, Some(_)) => return Err(usage("--p only applies to --variant Sp")),
        (Variant::S, None) => io::measure_to_string(&surface_measure(&poly, SurfaceVariant::S), None),
        (Variant::Sstar, None) => io::measure_to_string(&surface_measure(&poly, SurfaceVariant::Sstar), None),
        (Variant::So, None) => io::measure_to_string(&surface_measure(&poly, SurfaceVariant::So), None),
    };
    emit(&text, out)
}

fn cmd_transform(input: &Path, map: &str, p: Option<f64>, out: Option<&Path>) -> anyhow::Result<()> {
    let map_text = if map.trim_start().starts_with(['[', '{']) { map.to_string() } else { read(Path::new(map))? };
    let map = io::map_from_str(&map_text)?;
    let value = io::parse_json(&read(input)?)?;
    let text = if value.get("vertices").is_some() {
        if p.is_some() {
            return Err(usage("--p only applies to measure input"));
        }
        io::polytope_to_value(&apply_map(&io::polytope_from_value(&value)?, &map)?).to_string()
    } else {
        let (mu, stored) = io::measure_from_value(&value)?;
        let p = p.or(stored).unwrap_or(1.0);
        io::measure_to_string(&pushforward_contra(&mu, &map, p)?, Some(p))
    };
    emit(&text, out)
}

fn cmd_variation(body: &Path, dir: &Path, p: f64, eps: f64, no_fd: bool, out: Option<&Path>) -> anyhow::Result<()> {
    if !(eps > 0.0 && eps.is_finite()) {
        return Err(usage(format!("eps = {eps} must be positive")));
    }
    let pb = io::polytope_from_str(&read(body)?)?;
    let qb = io::polytope_from_str(&read(dir)?)?;
    let exact = lp_first_variation(&pb, &qb, p)?;
    let mut report = json!({
        "p": p,
        "first_variation": exact,
    });
    if !no_fd {
        let step = relative_step(&pb, &qb, p, eps)?;
        let fd = richardson_variation(&pb, &qb, p, step)?;
        report["eps"] = json!(step);
        report["richardson"] = json!(fd);
        report["relative_error"] = json!((fd - exact).abs() / exact.abs().max(f64::MIN_POSITIVE));
    }
    emit(&serde_json::to_string_pretty(&report)?, out)
}

fn cmd_check(args: &CheckArgs) -> anyhow::Result<bool> {
    let mut cfg = match &args.config {
        Some(path) => SuiteConfig::from_json(&read(path)?)?,
        None => SuiteConfig::default(),
    };
    if let Some(s) = &args.suite {
        cfg.suites = Suite::parse_list(s)?;
    }
    if let Some(n) = &args.n {
        cfg.dims = n.clone();
    }
    if let Some(p) = &args.p {
        cfg.p_values = p.clone();
    }
    if let Some(t) = args.trials {
        cfg.trials = t;
    }
    if let Some(seed) = args.seed {
        cfg.seed = seed;
    }
    if let Some(seed) = env_seed()? {
        cfg.seed = seed;
    }
    if let Some(l) = &args.lambda {
        cfg.lambdas = l.clone();
    }
    if let Some(s) = &args.s {
        cfg.scales = s.clone();
    }
    if let Some(k) = args.pairs {
        cfg.variation_pairs = k;
    }
    if let Some(t) = args.tol_exact {
        cfg.tol_exact = t;
    }
    if let Some(t) = args.tol_float {
        cfg.tol_float = t;
    }
    if let Some(t) = args.tol_fd {
        cfg.tol_fd = t;
    }
    cfg.validate()?;
    let report = run_suite(&cfg)?;
    log::info!("{} passed, {} failed", report.summary.passed, report.summary.failed);
    emit(&serde_json::to_string_pretty(&report.to_json())?, args.out.as_deref())?;
    Ok(report.all_passed())
}

fn cmd_fit(
    candidate: Option<&str>,
    bundle: Option<&Path>,
    p: f64,
    n: usize,
    seed: u64,
    out: Option<&Path>,
) -> anyhow::Result<()> {
    if !p.is_finite() {
        return Err(usage(format!("exponent {p} is not finite")));
    }
    let result = match (candidate, bundle) {
        (Some(spec), None) => {
            let reg = MapRegistry::with_builtins();
            let kind = MeasureMapKind::parse(spec, p)?;
            let seed = env_seed()?.unwrap_or(seed);
            fit_classification(&kind, p, &default_probes(n, seed)?, &reg)?
        }
        (None, Some(path)) => fit_measures(&io::probe_bundle_from_str(&read(path)?)?, p)?,
        _ => return Err(usage("give exactly one of --candidate and --bundle")),
    };
    let value: Value = serde_json::to_value(&result)?;
    emit(&serde_json::to_string_pretty(&value)?, out)
}

/// 2 for bad flags, configs and unreadable or malformed files; 3 for inputs the
/// geometry rejects (`ORIGIN_NOT_CONTAINED`, `SINGULAR_MAP`, ...). Exit code 1
/// is reserved for failed checks.
fn exit_code(err: &anyhow::Error) -> u8 {
    match err.downcast_ref::<Error>() {
        Some(Error::ConfigInvalid(_) | Error::Parse(_)) | None => 2,
        Some(_) => 3,
    }
}

fn run(cli: Cli) -> anyhow::Result<bool> {
    match cli.command {
        Command::Measure { input, variant, p, out } => cmd_measure(&input, variant, p, out.as_deref()).map(|_| true),
        Command::Transform { input, map, p, out } => cmd_transform(&input, &map, p, out.as_deref()).map(|_| true),
        Command::Variation { body, dir, p, eps, no_fd, out } => {
            cmd_variation(&body, &dir, p, eps, no_fd, out.as_deref()).map(|_| true)
        }
        Command::Check(args) => cmd_check(&args),
        Command::Fit { candidate, bundle, p, n, seed, out } => {
            cmd_fit(candidate.as_deref(), bundle.as_deref(), p, n, seed, out.as_deref()).map(|_| true)
        }
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(exit_code(&err))
        }
    }
}
