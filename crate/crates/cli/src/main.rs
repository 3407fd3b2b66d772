use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::{Deserialize, Serialize};

use induced_meson::pipeline::ScanRow;
use induced_meson::report::{write_csv, write_json};
use induced_meson::validate::{validate_model, validate_standard_grid, ValidationReport};
use induced_meson::{
    condensates_forward, condensates_invert, emit_report, potential_coeffs, run_point, run_scan, AxialMode,
    Condensates, Error, Format, GridSpec, ModelParams, SingletPotential, Spacing,
};

#[derive(Parser, Debug)]
#[command(name = "induced-meson", version, about = "Composite scalar meson vacuum and spectrum solver")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Solve a single running point
    Solve(SolveArgs),
    /// Scan a grid of sigma values
    Scan(ScanArgs),
    /// Condensate relations
    #[command(subcommand)]
    Condensates(CondensatesCmd),
    /// Run the invariant suite (the standard grid when --lambda is not given)
    Validate(ModelArgs),
    /// Vacuum from brute-force grid minimisation only
    Oracle(OracleArgs),
}

#[derive(Args, Debug, Clone, Default)]
struct ModelArgs {
    /// Number of colors
    #[arg(long)]
    nc: Option<u32>,
    /// Compositeness scale in GeV
    #[arg(long)]
    lambda: Option<f64>,
    /// Spectral asymmetry in GeV
    #[arg(long)]
    m: Option<f64>,
    /// Pion decay constant in GeV (switches to override mode)
    #[arg(long)]
    fpi: Option<f64>,
    /// Bare axial mass in GeV
    #[arg(long)]
    m0a: Option<f64>,
    /// Composite axial field with the scalar's compositeness scale
    #[arg(long)]
    composite_a: bool,
    /// Output format: csv or json
    #[arg(long)]
    format: Option<String>,
    /// Output file (standard output when absent)
    #[arg(long)]
    out: Option<PathBuf>,
    /// Flat JSON file with keys nc, lambda, m, fpi, sigma, m0a, composite_a
    #[arg(long)]
    config: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct SolveArgs {
    #[command(flatten)]
    model: ModelArgs,
    #[arg(long)]
    sigma: Option<f64>,
}

#[derive(Args, Debug)]
struct ScanArgs {
    #[command(flatten)]
    model: ModelArgs,
    #[arg(long, default_value_t = 0.0)]
    sigma_min: f64,
    #[arg(long, default_value_t = 2.0)]
    sigma_max: f64,
    #[arg(long, default_value_t = 21)]
    n: usize,
    /// Logarithmic sigma spacing
    #[arg(long)]
    log: bool,
}

#[derive(Args, Debug)]
struct OracleArgs {
    #[command(flatten)]
    model: ModelArgs,
    #[arg(long)]
    sigma: Option<f64>,
    /// Upper end of the scan range in GeV (default 3·max(Λ, √3Λ))
    #[arg(long)]
    s_max: Option<f64>,
    #[arg(long, default_value_t = 1_000_000)]
    points: usize,
}

#[derive(Subcommand, Debug)]
enum CondensatesCmd {
    /// (Λ, M) → (C_q, C_g)
    Forward(ModelArgs),
    /// (C_q, C_g) → (Λ, M)
    Invert(InvertArgs),
}

#[derive(Args, Debug)]
struct InvertArgs {
    #[arg(long, default_value_t = 3)]
    nc: u32,
    /// Quark condensate in GeV³
    #[arg(long, allow_hyphen_values = true)]
    cq: f64,
    /// Gluon condensate in GeV⁴
    #[arg(long, allow_hyphen_values = true)]
    cg: f64,
    /// Starting Λ for Newton (requires --guess-m)
    #[arg(long, requires = "guess_m")]
    guess_lambda: Option<f64>,
    #[arg(long, requires = "guess_lambda")]
    guess_m: Option<f64>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct ConfigFile {
    nc: Option<u32>,
    lambda: Option<f64>,
    m: Option<f64>,
    fpi: Option<f64>,
    sigma: Option<f64>,
    m0a: Option<f64>,
    composite_a: Option<bool>,
}

enum Failure {
    Usage(String),
    Compute(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Usage(_) => Failure::Usage(e.to_string()),
            _ => Failure::Compute(e.to_string()),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Compute(e.to_string())
    }
}

struct Resolved {
    params: ModelParams,
    axial: AxialMode,
    sigma: Option<f64>,
    format: Option<Format>,
    out: Option<PathBuf>,
}

fn load_config(path: &Path) -> Result<ConfigFile, Failure> {
    let text = fs::read_to_string(path)
        .map_err(|e| Failure::Usage(format!("cannot read config {}: {e}", path.display())))?;
    serde_json::from_str(&text)
        .map_err(|e| Failure::Usage(format!("invalid config {}: {e}", path.display())))
}

/// Command-line flags override config-file values.
fn resolve(model: &ModelArgs, sigma_flag: Option<f64>, need_lambda: bool) -> Result<Option<Resolved>, Failure> {
    let cfg = match &model.config {
        Some(p) => load_config(p)?,
        None => ConfigFile::default(),
    };
    let format = model
        .format
        .as_deref()
        .map(str::parse::<Format>)
        .transpose()?;
    let Some(lambda) = model.lambda.or(cfg.lambda) else {
        if need_lambda {
            return Err(Failure::Usage("--lambda is required (flag or config)".into()));
        }
        return Ok(None);
    };
    let nc = model.nc.or(cfg.nc).unwrap_or(3);
    let m = model.m.or(cfg.m).unwrap_or(0.0);
    let params = match model.fpi.or(cfg.fpi) {
        Some(f) => ModelParams::with_fpi(nc, lambda, m, f),
        None => ModelParams::derived(nc, lambda, m),
    };
    let axial = if model.composite_a || cfg.composite_a.unwrap_or(false) {
        AxialMode::Composite
    } else {
        AxialMode::Elementary {
            m_0a: model.m0a.or(cfg.m0a).unwrap_or(0.0),
        }
    };
    Ok(Some(Resolved {
        params,
        axial,
        sigma: sigma_flag.or(cfg.sigma),
        format,
        out: model.out.clone(),
    }))
}

fn open_out(out: Option<&Path>) -> Result<Box<dyn Write>, Failure> {
    Ok(match out {
        Some(p) => Box::new(
            fs::File::create(p).map_err(|e| Failure::Compute(format!("cannot write {}: {e}", p.display())))?,
        ),
        None => Box::new(io::stdout().lock()),
    })
}

fn write_value<T: Serialize>(value: &T, out: Option<&Path>) -> Result<(), Failure> {
    write_json(value, open_out(out)?)?;
    Ok(())
}

fn cmd_solve(args: SolveArgs) -> Result<(), Failure> {
    let r = resolve(&args.model, args.sigma, true)?.unwrap();
    let sigma = r.sigma.ok_or_else(|| Failure::Usage("--sigma is required".into()))?;
    let result = run_point(&r.params, sigma, r.axial)?;
    match r.format.unwrap_or(Format::Json) {
        Format::Json => write_value(&result, r.out.as_deref()),
        Format::Csv => {
            let row = ScanRow::from_result(&r.params, sigma, Ok(result));
            write_csv(&[row], open_out(r.out.as_deref())?)?;
            Ok(())
        }
    }
}

fn cmd_scan(args: ScanArgs) -> Result<(), Failure> {
    let r = resolve(&args.model, None, true)?.unwrap();
    let grid = GridSpec {
        sigma_min: args.sigma_min,
        sigma_max: args.sigma_max,
        n: args.n,
        spacing: if args.log { Spacing::Log } else { Spacing::Linear },
    };
    let table = run_scan(&r.params, &grid, r.axial)?;
    emit_report(&table, r.format.unwrap_or(Format::Csv), r.out.as_deref())?;
    let d = &table.diagnostics;
    if !d.m_phi_strictly_decreasing {
        eprintln!("finding: m_phi not strictly decreasing between {:?}", d.monotonic_violations);
    }
    if !d.branch_switches.is_empty() {
        eprintln!("finding: vacuum branch switches at sigma = {:?}", d.branch_switches);
    }
    if d.failed_points > 0 {
        eprintln!("{} of {} points failed", d.failed_points, table.rows.len());
    }
    Ok(())
}

#[derive(Serialize)]
struct InvertOutput {
    lambda_cut: f64,
    m_asym: f64,
    residual: f64,
    iterations: usize,
}

fn cmd_condensates(cmd: CondensatesCmd) -> Result<(), Failure> {
    match cmd {
        CondensatesCmd::Forward(model) => {
            let r = resolve(&model, None, true)?.unwrap();
            let c = condensates_forward(r.params.n_c, r.params.lambda_cut, r.params.m_asym);
            write_value(&c, r.out.as_deref())
        }
        CondensatesCmd::Invert(a) => {
            let guess = a.guess_lambda.zip(a.guess_m);
            let inv = condensates_invert(a.nc, &Condensates { c_q: a.cq, c_g: a.cg }, guess)?;
            write_value(
                &InvertOutput {
                    lambda_cut: inv.lambda_cut,
                    m_asym: inv.m_asym,
                    residual: inv.residual,
                    iterations: inv.iterations,
                },
                None,
            )
        }
    }
}

fn print_validation(rep: &ValidationReport, format: Format, out: Option<&Path>) -> Result<(), Failure> {
    match format {
        Format::Json => write_value(rep, out),
        Format::Csv => {
            let mut w = open_out(out)?;
            for c in &rep.checks {
                let status = match (c.passed, c.informational) {
                    (true, _) => "PASS",
                    (false, true) => "INFO",
                    (false, false) => "FAIL",
                };
                writeln!(w, "{status} {} {}", c.name, c.detail)?;
            }
            let failed = rep.failures().count();
            writeln!(w, "{} checks, {failed} failed", rep.checks.len())?;
            Ok(())
        }
    }
}

fn cmd_validate(model: ModelArgs) -> Result<(), Failure> {
    let resolved = resolve(&model, None, false)?;
    let format = model
        .format
        .as_deref()
        .map(str::parse::<Format>)
        .transpose()?
        .unwrap_or(Format::Csv);
    let rep = match &resolved {
        Some(r) => validate_model(&r.params, r.axial),
        None => validate_standard_grid(),
    };
    print_validation(&rep, format, model.out.as_deref())?;
    if rep.passed() {
        Ok(())
    } else {
        Err(Failure::Compute(format!("{} invariant checks failed", rep.failures().count())))
    }
}

#[derive(Serialize)]
struct OracleOutput {
    sigma: f64,
    s_max: f64,
    points: usize,
    phi0: f64,
}

fn cmd_oracle(args: OracleArgs) -> Result<(), Failure> {
    let r = resolve(&args.model, args.sigma, true)?.unwrap();
    let sigma = r.sigma.ok_or_else(|| Failure::Usage("--sigma is required".into()))?;
    if sigma.is_nan() || sigma <= 0.0 {
        return Err(Failure::Usage("the grid oracle needs sigma > 0".into()));
    }
    let p = &r.params;
    let c_q = condensates_forward(p.n_c, p.lambda_cut, p.m_asym).c_q;
    let pot = SingletPotential::new(potential_coeffs(p, c_q, sigma)?);
    let s_max = args.s_max.unwrap_or(3.0 * 3f64.sqrt() * p.lambda_cut);
    let phi0 = induced_meson::vacuum_oracle_grid(&pot, s_max, args.points)?;
    write_value(
        &OracleOutput {
            sigma,
            s_max,
            points: args.points,
            phi0,
        },
        r.out.as_deref(),
    )
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let result = match cli.command {
        Command::Solve(a) => cmd_solve(a),
        Command::Scan(a) => cmd_scan(a),
        Command::Condensates(c) => cmd_condensates(c),
        Command::Validate(m) => cmd_validate(m),
        Command::Oracle(a) => cmd_oracle(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            eprintln!("run with --help for usage");
            ExitCode::from(1)
        }
        Err(Failure::Compute(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
