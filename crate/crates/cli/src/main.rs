//! `goe`: JSON and CSV reports for Garden-of-Eden analyses.
//!
//! Exit codes: 0 ok, 1 internal failure, 2 parse error, 3 resource or bound
//! exceeded, 4 precondition failed.

mod commands;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand};
use goe_core::homoclinic::{DEFAULT_HORIZON, DEFAULT_PRECISION, DEFAULT_TOL};

use commands::{DecayRequest, Numerics};
use report::{CliError, Outcome, RunReport};

#[derive(Parser)]
#[command(name = "goe", version, about = "Garden-of-Eden analyses for toral automorphisms and shift spaces")]
struct Cli {
    /// Always print the JSON run report on stdout (census prints CSV otherwise).
    #[arg(long, global = true)]
    json: bool,
    /// Target residual of the stable/unstable projections.
    #[arg(long, global = true, default_value_t = DEFAULT_PRECISION)]
    precision: f64,
    /// Numerical tolerance for homoclinic comparisons.
    #[arg(long, global = true, default_value_t = DEFAULT_TOL)]
    tol: f64,
    /// Seed for randomized sampling; echoed in the report.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Classify an integer matrix (hyperbolic, ergodic, spectrum on the circle).
    Classify { matrix: PathBuf },
    /// Garden-of-Eden verdict for an affine map commuting with a base automorphism.
    Endo {
        matrix: PathBuf,
        endo: PathBuf,
        /// Cross-check pre-injectivity with the homoclinic oracle over ‖k‖∞ ≤ K.
        #[arg(long, value_name = "K")]
        oracle: Option<u32>,
    },
    /// Homoclinic points of a hyperbolic automorphism.
    #[command(subcommand)]
    Homoclinic(HomoclinicCommand),
    /// One-dimensional cellular automata and sliding block codes.
    #[command(subcommand)]
    Ca(CaCommand),
    /// Shifts of finite type and sofic presentations.
    #[command(subcommand)]
    Sft(SftCommand),
}

#[derive(Subcommand)]
enum HomoclinicCommand {
    /// The point h_k and its orbit decay check.
    Sample {
        matrix: PathBuf,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, required = true)]
        k: Vec<i64>,
        #[arg(long, default_value_t = DEFAULT_HORIZON)]
        horizon: u32,
    },
    /// Fraction of grid cells of the torus hit by h_k with ‖k‖∞ ≤ bound.
    Coverage {
        matrix: PathBuf,
        #[arg(long, default_value_t = 50)]
        bound: u32,
        #[arg(long, default_value_t = 32)]
        grid: u32,
    },
    /// Decay checks for one index or for seeded random indices.
    Decay {
        matrix: PathBuf,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        k: Option<Vec<i64>>,
        #[arg(long, default_value_t = 10)]
        samples: usize,
        #[arg(long, default_value_t = 5)]
        bound: i64,
        #[arg(long, default_value_t = DEFAULT_HORIZON)]
        horizon: u32,
    },
}

#[derive(Subcommand)]
enum CaCommand {
    /// Surjectivity and pre-injectivity of all 256 elementary rules.
    Census,
    /// Both verdicts for a code file, on the full shift or a given sofic shift.
    Check {
        code: PathBuf,
        #[arg(long, conflicts_with = "named")]
        shift: Option<PathBuf>,
        /// golden, even, or full:q.
        #[arg(long)]
        named: Option<String>,
    },
    /// Search for a surjective but not pre-injective self-map (default: even shift).
    MooreSearch {
        #[arg(long, default_value_t = 2)]
        radius: usize,
        #[arg(long, conflicts_with = "named")]
        shift: Option<PathBuf>,
        #[arg(long)]
        named: Option<String>,
    },
}

#[derive(Subcommand)]
enum SftCommand {
    /// Build a presentation from {"alphabet", "window", "allowed"} or a named shift.
    Build {
        #[arg(conflicts_with = "named")]
        spec: Option<PathBuf>,
        #[arg(long)]
        named: Option<String>,
    },
    /// Mixing, periodic point counts and word counts of a presentation.
    Props {
        #[arg(conflicts_with = "named")]
        presentation: Option<PathBuf>,
        #[arg(long)]
        named: Option<String>,
        #[arg(long, default_value_t = 8)]
        max_period: usize,
        #[arg(long, default_value_t = 10)]
        max_word_len: usize,
    },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Classify { .. } => "classify",
            Command::Endo { .. } => "endo",
            Command::Homoclinic(HomoclinicCommand::Sample { .. }) => "homoclinic sample",
            Command::Homoclinic(HomoclinicCommand::Coverage { .. }) => "homoclinic coverage",
            Command::Homoclinic(HomoclinicCommand::Decay { .. }) => "homoclinic decay",
            Command::Ca(CaCommand::Census) => "ca census",
            Command::Ca(CaCommand::Check { .. }) => "ca check",
            Command::Ca(CaCommand::MooreSearch { .. }) => "ca moore-search",
            Command::Sft(SftCommand::Build { .. }) => "sft build",
            Command::Sft(SftCommand::Props { .. }) => "sft props",
        }
    }

    fn uses_seed(&self) -> bool {
        matches!(self, Command::Homoclinic(HomoclinicCommand::Decay { k: None, .. }))
    }
}

fn run(cli: &Cli) -> Result<Outcome, CliError> {
    let numerics = Numerics { precision: cli.precision, tol: cli.tol };
    match &cli.command {
        Command::Classify { matrix } => commands::classify(matrix),
        Command::Endo { matrix, endo, oracle } => commands::endo(matrix, endo, *oracle, &numerics),
        Command::Homoclinic(HomoclinicCommand::Sample { matrix, k, horizon }) => {
            commands::homoclinic_sample(matrix, k, *horizon, &numerics)
        }
        Command::Homoclinic(HomoclinicCommand::Coverage { matrix, bound, grid }) => {
            commands::homoclinic_coverage(matrix, *bound, *grid, &numerics)
        }
        Command::Homoclinic(HomoclinicCommand::Decay { matrix, k, samples, bound, horizon }) => {
            let request =
                DecayRequest { k: k.as_deref(), samples: *samples, bound: *bound, horizon: *horizon, seed: cli.seed };
            commands::homoclinic_decay(matrix, &request, &numerics)
        }
        Command::Ca(CaCommand::Census) => commands::ca_census(),
        Command::Ca(CaCommand::Check { code, shift, named }) => {
            commands::ca_check(code, shift.as_deref(), named.as_deref())
        }
        Command::Ca(CaCommand::MooreSearch { radius, shift, named }) => {
            commands::ca_moore_search(*radius, shift.as_deref(), named.as_deref())
        }
        Command::Sft(SftCommand::Build { spec, named }) => commands::sft_build(spec.as_deref(), named.as_deref()),
        Command::Sft(SftCommand::Props { presentation, named, max_period, max_word_len }) => {
            commands::sft_props(presentation.as_deref(), named.as_deref(), *max_period, *max_word_len)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let started = Instant::now();
    let outcome = match run(&cli) {
        Ok(outcome) => outcome,
        Err(e) => {
            eprintln!("goe {}: {e}", cli.command.name());
            return e.exit_code();
        }
    };
    eprintln!("{}: {}", cli.command.name(), outcome.summary);
    match outcome.plain {
        Some(plain) if !cli.json => print!("{plain}"),
        _ => {
            let report = RunReport {
                command: cli.command.name().to_string(),
                inputs: outcome.inputs,
                verdicts: outcome.verdicts,
                timing_ms: started.elapsed().as_millis() as u64,
                version: env!("CARGO_PKG_VERSION"),
                seed: cli.command.uses_seed().then_some(cli.seed),
            };
            match serde_json::to_string_pretty(&report) {
                Ok(text) => println!("{text}"),
                Err(e) => {
                    eprintln!("goe: cannot serialize report: {e}");
                    return ExitCode::from(1);
                }
            }
        }
    }
    ExitCode::SUCCESS
}
