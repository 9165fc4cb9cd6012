use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use permsym::commands::{cmd_csp, cmd_exchange, cmd_impossibility, cmd_search, cmd_verify, CliError};
use permsym::config::ParticleConfig;
use permsym::csplab::DEFAULT_BUDGET;
use permsym::report::Report;
use permsym::tolerance::{Tolerances, DEFAULT_GEOMETRIC};

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Json,
    Markdown,
}

/// Exchange phases, symmetrization checks and scheme searches for
/// multi-particle spin configurations.
#[derive(Parser, Debug)]
#[command(name = "permsym", version, about)]
struct Cli {
    /// Particle configuration (JSON).
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    format: Format,
    /// Geometric tolerance in radians.
    #[arg(long, default_value_t = DEFAULT_GEOMETRIC, global = true)]
    tolerance: f64,
    /// Write the report here instead of stdout.
    #[arg(long, short, global = true)]
    output: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Run the geometry, ranking and exchange invariant checks.
    Verify,
    /// Exchange two particles and report the phase.
    Exchange {
        /// Particle ids, e.g. `a,b`.
        #[arg(long, value_delimiter = ',', num_args = 1..)]
        pair: Vec<String>,
    },
    /// Phase table under the emulation rule set (or the config's scheme).
    Csp,
    /// Parity certificate that no standard-form assignment exists.
    Impossibility,
    /// Exhaustive search for schemes reproducing the conventional signs.
    Search {
        #[arg(long, default_value_t = 1)]
        max_rank: usize,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
    },
}

fn run(cli: &Cli) -> Result<Report, CliError> {
    let tol = Tolerances::with_geometric(cli.tolerance);
    let config = || -> Result<ParticleConfig, CliError> {
        let path = cli.config.as_ref().ok_or(CliError::MissingConfig)?;
        Ok(ParticleConfig::load(path)?)
    };
    match &cli.command {
        Command::Verify => cmd_verify(&config()?, &tol),
        Command::Exchange { pair } => match pair.as_slice() {
            [a, b] => cmd_exchange(&config()?, a, b, &tol),
            _ => Err(CliError::BadPair(pair.join(","))),
        },
        Command::Csp => cmd_csp(&config()?, &tol),
        Command::Impossibility => cmd_impossibility(&tol),
        Command::Search { max_rank, budget } => cmd_search(&config()?, *max_rank, *budget, &tol),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let report = match run(&cli) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(e.exit_code() as u8);
        }
    };
    let text = match cli.format {
        Format::Json => report.to_json() + "\n",
        Format::Markdown => report.to_markdown(),
    };
    match &cli.output {
        Some(path) => {
            if let Err(e) = std::fs::write(path, text) {
                eprintln!("error: cannot write {}: {e}", path.display());
                return ExitCode::from(1);
            }
        }
        None => print!("{text}"),
    }
    if report.passed {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
