mod axis;
mod config;
mod table;

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, bail};
use clap::{Args, CommandFactory, Parser, Subcommand};
use rayon::prelude::*;

use xxchain::analysis::{self, Verdict};
use xxchain::check::{self, CheckConfig, Tolerances};
use xxchain::{thermo, CouplingParams, Error, SiteParity, Temperature};

use axis::Axis;
use table::{float, Table};

/// Exact solution, entanglement witness and phase boundaries of the staggered-field XX chain.
#[derive(Debug, Parser)]
#[command(name = "xxchain", version)]
struct Cli {
    /// File of `key = value` lines mirroring the long flags; command-line flags win.
    #[arg(long, global = true, value_name = "PATH")]
    config: Option<PathBuf>,

    #[command(subcommand)]
    command: Cmd,
}

#[derive(Debug, Subcommand)]
enum Cmd {
    /// Witness W over a (B, b, T) grid of the infinite chain.
    #[command(args_override_self = true)]
    WitnessScan(WitnessScan),
    /// Single-site entropy at T = 0 over a (B, b) grid.
    #[command(args_override_self = true)]
    EntropyScan(EntropyScan),
    /// Outermost field B* with W = 1, for each (b, T).
    #[command(args_override_self = true)]
    Boundary(Boundary),
    /// Critical staggered field b_c above which the T = 0, B = 0 state is not witnessed.
    #[command(args_override_self = true)]
    Bc(Bc),
    /// Field of maximal odd-site entropy and its offset from B = b.
    #[command(args_override_self = true)]
    Fig3(Fig3),
    /// Compare the free-fermion formulas against dense diagonalization.
    #[command(args_override_self = true)]
    Check(Check),
}

#[derive(Debug, Args)]
struct Output {
    /// Write CSV here instead of stdout.
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct Temperatures {
    /// Temperature value or start:stop:count; 0 means the exact ground state.
    #[arg(long = "T", value_name = "RANGE", allow_hyphen_values = true)]
    t: Option<Axis>,
    /// Inverse temperature, instead of --T.
    #[arg(long, value_name = "RANGE", conflicts_with = "t", allow_hyphen_values = true)]
    beta: Option<Axis>,
}

impl Temperatures {
    fn resolve(&self) -> anyhow::Result<Vec<Temperature>> {
        if let Some(beta) = &self.beta {
            return beta
                .values()
                .iter()
                .map(|&b| Temperature::from_beta(b).map_err(usage))
                .collect();
        }
        let Some(t) = &self.t else {
            return Ok(vec![Temperature::Zero]);
        };
        t.values()
            .iter()
            .map(|&t| {
                if t == 0.0 {
                    Ok(Temperature::Zero)
                } else {
                    Temperature::finite(t).map_err(usage)
                }
            })
            .collect()
    }
}

#[derive(Debug, Args)]
struct WitnessScan {
    #[arg(long = "J", default_value_t = 1.0, allow_hyphen_values = true)]
    j: f64,
    #[arg(long = "B", default_value = "0", value_name = "RANGE", allow_hyphen_values = true)]
    field: Axis,
    #[arg(long = "b", default_value = "0", value_name = "RANGE", allow_hyphen_values = true)]
    staggered: Axis,
    #[command(flatten)]
    temperature: Temperatures,
    #[command(flatten)]
    output: Output,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
enum ParityChoice {
    Even,
    Odd,
    Both,
}

impl ParityChoice {
    fn parities(self) -> &'static [SiteParity] {
        match self {
            ParityChoice::Even => &[SiteParity::Even],
            ParityChoice::Odd => &[SiteParity::Odd],
            ParityChoice::Both => &[SiteParity::Even, SiteParity::Odd],
        }
    }
}

#[derive(Debug, Args)]
struct EntropyScan {
    #[arg(long = "J", default_value_t = 1.0, allow_hyphen_values = true)]
    j: f64,
    #[arg(long = "B", default_value = "0", value_name = "RANGE", allow_hyphen_values = true)]
    field: Axis,
    #[arg(long = "b", default_value = "0", value_name = "RANGE", allow_hyphen_values = true)]
    staggered: Axis,
    #[arg(long, value_enum, default_value_t = ParityChoice::Both)]
    parity: ParityChoice,
    #[command(flatten)]
    temperature: Temperatures,
    #[command(flatten)]
    output: Output,
}

#[derive(Debug, Args)]
struct Boundary {
    #[arg(long = "J", default_value_t = 1.0, allow_hyphen_values = true)]
    j: f64,
    #[arg(long = "b", default_value = "0", value_name = "RANGE", allow_hyphen_values = true)]
    staggered: Axis,
    #[command(flatten)]
    temperature: Temperatures,
    #[command(flatten)]
    output: Output,
}

#[derive(Debug, Args)]
struct Bc {
    #[arg(long = "J", default_value_t = 1.0, allow_hyphen_values = true)]
    j: f64,
    /// Bisection tolerance on b.
    #[arg(long, default_value_t = 1e-8)]
    tol: f64,
}

#[derive(Debug, Args)]
struct Fig3 {
    #[arg(long = "J", default_value = "0.5,1,2", value_name = "LIST", allow_hyphen_values = true)]
    j: Axis,
    #[arg(long = "b", default_value = "0.1:4:40", value_name = "RANGE", allow_hyphen_values = true)]
    staggered: Axis,
    #[command(flatten)]
    output: Output,
}

#[derive(Debug, Args)]
struct Check {
    #[arg(long, default_value_t = check::DEFAULT_SEED)]
    seed: u64,
    /// Random draws per chain length.
    #[arg(long, default_value_t = check::DEFAULT_CASES as u64, value_parser = clap::value_parser!(u64).range(1..))]
    cases: u64,
    /// Chain lengths, even and at most 12.
    #[arg(long, value_delimiter = ',', default_values_t = check::DEFAULT_SIZES)]
    sizes: Vec<usize>,
    /// Multiplies every tolerance; 0 turns the check into a guaranteed failure.
    #[arg(long, hide = true, default_value_t = 1.0)]
    tolerance_scale: f64,
}

/// An error caused by bad input, reported with exit code 2.
#[derive(Debug)]
struct Usage(anyhow::Error);

impl std::fmt::Display for Usage {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{:#}", self.0)
    }
}

impl std::error::Error for Usage {}

fn usage(e: impl Into<anyhow::Error>) -> anyhow::Error {
    anyhow!(Usage(e.into()))
}

fn params(j: f64, field: f64, staggered: f64) -> anyhow::Result<CouplingParams> {
    CouplingParams::new(j, field, staggered).map_err(usage)
}

fn lib_error(e: Error) -> anyhow::Error {
    match e {
        Error::InvalidParams(_)
        | Error::InvalidTemperature(_)
        | Error::InvalidChain(_)
        | Error::ChainTooLarge { .. }
        | Error::FiniteTemperatureUnsupported => usage(e),
        other => other.into(),
    }
}

fn witness_scan(args: &WitnessScan) -> anyhow::Result<()> {
    let temps = args.temperature.resolve()?;
    let mut points = Vec::new();
    for &field in args.field.values() {
        for &b in args.staggered.values() {
            for &t in &temps {
                points.push((params(args.j, field, b)?, t));
            }
        }
    }
    let rows: Vec<Vec<String>> = points
        .par_iter()
        .map(|&(p, t)| {
            let w = thermo::witness_thermo(&p, t)?;
            Ok(vec![
                float(p.coupling),
                float(p.field),
                float(p.staggered),
                table::temperature(t),
                float(w),
                table::flag(Verdict::from_witness(w).is_entangled()).to_string(),
            ])
        })
        .collect::<Result<_, Error>>()
        .map_err(lib_error)?;
    let mut out = Table::new(&["J", "B", "b", "T", "W", "witnessed"]);
    rows.iter().for_each(|r| out.push(r));
    table::emit(&out.render(), args.output.out.as_deref())
}

fn entropy_scan(args: &EntropyScan) -> anyhow::Result<()> {
    let temps = args.temperature.resolve()?;
    if temps.iter().any(|t| !t.is_zero()) {
        return Err(usage(anyhow!(
            "entropy-scan is restricted to T = 0: the single-site entropy of the thermal state is not available from the exact solution"
        )));
    }
    let mut points = Vec::new();
    for &field in args.field.values() {
        for &b in args.staggered.values() {
            for &parity in args.parity.parities() {
                points.push((params(args.j, field, b)?, parity));
            }
        }
    }
    let rows: Vec<Vec<String>> = points
        .par_iter()
        .map(|&(p, parity)| {
            let s = thermo::site_entropy(&p, parity, Temperature::Zero)?;
            Ok(vec![
                float(p.coupling),
                float(p.field),
                float(p.staggered),
                parity.name().to_string(),
                float(s.eta),
                float(s.entropy),
            ])
        })
        .collect::<Result<_, Error>>()
        .map_err(lib_error)?;
    let mut out = Table::new(&["J", "B", "b", "parity", "eta", "S"]);
    rows.iter().for_each(|r| out.push(r));
    table::emit(&out.render(), args.output.out.as_deref())
}

fn boundary(args: &Boundary) -> anyhow::Result<()> {
    let temps = args.temperature.resolve()?;
    let mut points = Vec::new();
    for &b in args.staggered.values() {
        params(args.j, 0.0, b)?;
        for &t in &temps {
            points.push((b, t));
        }
    }
    let rows: Vec<Vec<String>> = points
        .par_iter()
        .map(|&(b, t)| {
            let r = analysis::witness_boundary_field(args.j, b, t)?;
            Ok(vec![
                float(args.j),
                float(b),
                table::temperature(t),
                table::flag(r.found).to_string(),
                r.value.map(float).unwrap_or_default(),
            ])
        })
        .collect::<Result<_, Error>>()
        .map_err(lib_error)?;
    let mut out = Table::new(&["J", "b", "T", "found", "B_star"]);
    rows.iter().for_each(|r| out.push(r));
    table::emit(&out.render(), args.output.out.as_deref())
}

fn bc(args: &Bc) -> anyhow::Result<()> {
    let b = analysis::critical_staggered_field(args.j, args.tol).map_err(lib_error)?;
    println!("{b:.6}");
    Ok(())
}

fn fig3(args: &Fig3) -> anyhow::Result<()> {
    let grid = args.staggered.values();
    if grid.iter().any(|&b| b <= 0.0) || grid.windows(2).any(|w| w[1] <= w[0]) {
        return Err(usage(anyhow!("--b must be strictly increasing and positive")));
    }
    let curves: Vec<_> = args
        .j
        .values()
        .par_iter()
        .map(|&j| analysis::epsilon_curve(j, grid).map(|c| (j, c)))
        .collect::<Result<_, Error>>()
        .map_err(lib_error)?;
    let mut out = Table::new(&["J", "b", "B_peak", "epsilon"]);
    for (j, curve) in curves {
        for p in curve {
            out.push(&[float(j), float(p.staggered), float(p.field), float(p.epsilon)]);
        }
    }
    table::emit(&out.render(), args.output.out.as_deref())
}

fn run_check(args: &Check) -> anyhow::Result<bool> {
    if args.tolerance_scale.is_nan() || args.tolerance_scale < 0.0 {
        bail!(Usage(anyhow!("tolerance scale must be non-negative")));
    }
    let cfg = CheckConfig {
        seed: args.seed,
        cases: args.cases as usize,
        sizes: args.sizes.clone(),
        tolerances: Tolerances::default().scaled(args.tolerance_scale),
    };
    let report = check::run(&cfg).map_err(lib_error)?;
    println!("seed {} cases {} sizes {:?}", cfg.seed, cfg.cases, cfg.sizes);
    for d in &report.deviations {
        println!(
            "{:<20} max {:.3e}  tol {:.1e}  samples {}",
            d.quantity, d.max, d.tolerance, d.samples
        );
    }
    for f in &report.failures {
        println!("violation: {f}");
    }
    if report.passed() {
        println!("ok");
    } else {
        println!("FAILED: {} violations", report.failures.len());
    }
    Ok(report.passed())
}

fn run(cli: Cli) -> anyhow::Result<bool> {
    match &cli.command {
        Cmd::WitnessScan(a) => witness_scan(a)?,
        Cmd::EntropyScan(a) => entropy_scan(a)?,
        Cmd::Boundary(a) => boundary(a)?,
        Cmd::Bc(a) => bc(a)?,
        Cmd::Fig3(a) => fig3(a)?,
        Cmd::Check(a) => return run_check(a),
    }
    Ok(true)
}

fn main() -> ExitCode {
    let args = match config::expand(&Cli::command(), std::env::args_os().collect()) {
        Ok(args) => args,
        Err(e) => {
            eprintln!("error: {e:#}");
            return ExitCode::from(2);
        }
    };
    let cli = Cli::try_parse_from(args).unwrap_or_else(|e| e.exit());
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            let code = if e.is::<Usage>() { 2 } else { 1 };
            ExitCode::from(code)
        }
    }
}
