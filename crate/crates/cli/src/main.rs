//! `fuzzctl`: evaluate fuzzy controllers, sweep their control surfaces,
//! check rulebase documents, trace fired rules, and run wash-cycle
//! simulations.
//!
//! Exit codes are a stable contract: 0 success, 1 input/file errors
//! (unreadable or invalid documents, runtime evaluation failures), 2 usage
//! errors (bad flags or assignments, invalid physical parameters).

mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use fuzzctl_core::dsl::Diagnostic;
use fuzzctl_core::DefuzzMode;

#[derive(Parser)]
#[command(
    name = "fuzzctl",
    version,
    about = "Fuzzy-inference controller toolkit"
)]
struct Cli {
    /// Controller document; defaults to $FUZZCTL_SPEC, then the bundled
    /// washing-machine controller
    #[arg(long, global = true, value_name = "PATH")]
    spec: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate the controller at one crisp input point
    Eval(EvalArgs),
    /// Sweep the input space into a CSV control surface
    Sweep(SweepArgs),
    /// Parse and validate a controller document
    Check(CheckArgs),
    /// Show every fired rule at one input point
    Explain(ExplainArgs),
    /// Run the closed-loop wash-cycle simulation
    Simulate(SimulateArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ModeArg {
    Centroid,
    Paper,
}

impl From<ModeArg> for DefuzzMode {
    fn from(mode: ModeArg) -> Self {
        match mode {
            ModeArg::Centroid => DefuzzMode::Centroid,
            ModeArg::Paper => DefuzzMode::Paper,
        }
    }
}

fn parse_assignment(raw: &str) -> Result<(String, f64), String> {
    let (name, value) = raw
        .split_once('=')
        .ok_or_else(|| format!("expected NAME=VALUE, got `{raw}`"))?;
    let name = name.trim();
    if name.is_empty() {
        return Err(format!("expected NAME=VALUE, got `{raw}`"));
    }
    let value: f64 = value
        .trim()
        .parse()
        .map_err(|_| format!("`{value}` is not a number"))?;
    Ok((name.to_ascii_lowercase(), value))
}

/// Per-input sample counts, given as `N` or `NxM[x..]`.
#[derive(Clone, Debug)]
struct GridSpec(Vec<usize>);

fn parse_grid(raw: &str) -> Result<GridSpec, String> {
    let counts: Result<Vec<usize>, _> = raw.split('x').map(|part| part.parse::<usize>()).collect();
    let counts = counts.map_err(|_| format!("expected N or NxM, got `{raw}`"))?;
    if counts.is_empty() || counts.iter().any(|n| *n < 2) {
        return Err("every grid dimension needs at least 2 samples".into());
    }
    Ok(GridSpec(counts))
}

#[derive(Args)]
struct EvalArgs {
    /// Controller document (overrides --spec)
    spec_path: Option<PathBuf>,
    /// Crisp input assignment, once per declared input
    #[arg(long = "set", value_name = "NAME=VALUE", value_parser = parse_assignment)]
    set: Vec<(String, f64)>,
    #[arg(long, value_enum, default_value_t = ModeArg::Centroid)]
    mode: ModeArg,
}

#[derive(Args)]
struct SweepArgs {
    /// Controller document (overrides --spec)
    spec_path: Option<PathBuf>,
    /// Samples per input, e.g. 101x101 (defaults to 101 per input)
    #[arg(long, value_parser = parse_grid)]
    grid: Option<GridSpec>,
    /// Write the CSV here instead of stdout
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = ModeArg::Centroid)]
    mode: ModeArg,
}

#[derive(Args)]
struct CheckArgs {
    /// Controller document (overrides --spec)
    spec_path: Option<PathBuf>,
}

#[derive(Args)]
struct ExplainArgs {
    /// Controller document (overrides --spec)
    spec_path: Option<PathBuf>,
    /// Crisp input assignment, once per declared input
    #[arg(long = "set", value_name = "NAME=VALUE", value_parser = parse_assignment)]
    set: Vec<(String, f64)>,
}

#[derive(Args)]
struct SimulateArgs {
    /// Controller document (overrides --spec)
    spec_path: Option<PathBuf>,
    /// Initial dirt on the clothes, 0-30
    #[arg(long, default_value_t = 5.0)]
    dirt: f64,
    /// Dirt release rate per minute of agitation
    #[arg(long, default_value_t = 0.7)]
    k: f64,
    /// Opacity units per transferred dirt unit
    #[arg(long, default_value_t = 0.03)]
    opacity_gain: f64,
    /// Idle-phase pressure counts (defaults to counts consistent with --dirt)
    #[arg(long)]
    pressure: Option<f64>,
    /// Also run a fixed-timer baseline of this many minutes and report deltas
    #[arg(long, value_name = "MINUTES")]
    baseline: Option<f64>,
    /// Fraction of the final opacity counted as saturated, in (0, 1)
    #[arg(long, default_value_t = 0.95)]
    opacity_fraction: f64,
    #[arg(long, default_value_t = 0.0)]
    pressure_min: f64,
    #[arg(long, default_value_t = 1023.0)]
    pressure_max: f64,
    /// Residual dirt at or below this counts as clean
    #[arg(long, default_value_t = 1.0)]
    clean_threshold: f64,
    #[arg(long, default_value_t = 3)]
    max_reruns: u32,
    /// Liters per fill
    #[arg(long, default_value_t = 40.0)]
    fill_volume: f64,
    /// Agitation power in watts
    #[arg(long, default_value_t = 500.0)]
    power: f64,
    #[arg(long, default_value_t = 3.0)]
    probe_minutes: f64,
    #[arg(long, default_value_t = 0.05)]
    probe_dt: f64,
    /// Emit one CSV row (total_time,total_water,total_energy,final_dirt,reruns)
    /// instead of the report text
    #[arg(long)]
    csv: bool,
    #[arg(long, value_enum, default_value_t = ModeArg::Centroid)]
    mode: ModeArg,
}

/// Command failures carrying their exit code.
enum CliError {
    /// Bad flags or physical parameters: exit 2.
    Usage(String),
    /// Unreadable files, invalid documents, runtime failures: exit 1.
    Input(String),
    /// Parse/validation diagnostics, one per line: exit 1.
    Diagnostics(Vec<Diagnostic>),
}

impl CliError {
    fn report(self) -> ExitCode {
        match self {
            CliError::Usage(message) => {
                eprintln!("error: {message}");
                ExitCode::from(2)
            }
            CliError::Input(message) => {
                eprintln!("error: {message}");
                ExitCode::from(1)
            }
            CliError::Diagnostics(diags) => {
                for d in diags {
                    eprintln!("{d}");
                }
                ExitCode::from(1)
            }
        }
    }
}

impl From<fuzzctl_core::FuzzyError> for CliError {
    fn from(err: fuzzctl_core::FuzzyError) -> Self {
        CliError::Input(err.to_string())
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        // clap exits 2 on usage errors, 0 on --help/--version.
        Err(err) => err.exit(),
    };
    let result = match cli.command {
        Command::Eval(args) => commands::eval(cli.spec.as_deref(), &args),
        Command::Sweep(args) => commands::sweep(cli.spec.as_deref(), &args),
        Command::Check(args) => commands::check(cli.spec.as_deref(), &args),
        Command::Explain(args) => commands::explain(cli.spec.as_deref(), &args),
        Command::Simulate(args) => commands::simulate(cli.spec.as_deref(), &args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => err.report(),
    }
}
