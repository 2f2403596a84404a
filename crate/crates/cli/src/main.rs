//! `cyclie`: batch front end for the verification and solver pipelines.
//!
//! Every subcommand accepts trailing `key=value` parameters, which override
//! the flags of the same name:
//!
//! ```text
//! cyclie verify contraction-odd g=1 m=5 l=3 seed=7
//! cyclie center g=1 n=0 k=4
//! cyclie kv solve g=0 n=2 cutoff=6 --out f.json
//! cyclie kv check-kv1 g=0 n=2 --in f.json
//! ```
//!
//! Exit status: 0 when every check passes, 1 on a failed verification or a
//! failed solve, 2 on usage and parse errors.

mod commands;
mod config;
mod report;
mod suites;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use config::{CliError, CliResult, Flags, RunConfig};
use report::Report;

#[derive(Parser)]
#[command(name = "cyclie", version, about = "Exact computations with cyclic words, necklace brackets and KV equations")]
struct Cli {
    /// Genus of the surface.
    #[arg(long, global = true)]
    g: Option<usize>,
    /// Number of boundary components besides the outer one.
    #[arg(long, global = true)]
    n: Option<usize>,
    /// Weight cutoff (at least 2).
    #[arg(long, global = true)]
    cutoff: Option<usize>,
    /// JSON file with rotation numbers.
    #[arg(long, global = true, value_name = "FILE")]
    framing: Option<PathBuf>,
    /// Seed for randomized suites.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Input JSON file.
    #[arg(long = "in", global = true, value_name = "FILE")]
    input: Option<PathBuf>,
    /// Write the JSON report here.
    #[arg(long, global = true, value_name = "FILE")]
    out: Option<PathBuf>,
    /// Format of the report on standard output.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// log(e^u e^v); defaults to the first two generators.
    Bch {
        params: Vec<String>,
    },
    /// Conjugator g with g⁻¹ a g = z, for z linear or z = ω₀.
    Normalize {
        params: Vec<String>,
    },
    /// Solve or check the Kashiwara-Vergne equations.
    Kv {
        /// solve, check-kv1 or check
        action: String,
        params: Vec<String>,
    },
    /// Center of the necklace Lie algebra in weights k (`k=4` or `k=0..6`).
    Center {
        params: Vec<String>,
    },
    /// Poisson cohomology table (`degree=0|1 weights=-2..2`).
    Cohomology {
        params: Vec<String>,
    },
    /// Run a named verification suite.
    Verify {
        suite: String,
        params: Vec<String>,
    },
}

fn run(cli: &Cli) -> CliResult<Report> {
    let flags = || Flags {
        g: cli.g,
        n: cli.n,
        cutoff: cli.cutoff,
        seed: cli.seed,
        framing: cli.framing.clone(),
        input: cli.input.clone(),
    };
    match &cli.command {
        Command::Bch { params } => commands::cmd_bch(&RunConfig::new(flags(), params)?),
        Command::Normalize { params } => commands::cmd_normalize(&RunConfig::new(flags(), params)?),
        Command::Kv { action, params } => commands::cmd_kv(action, &RunConfig::new(flags(), params)?),
        Command::Center { params } => commands::cmd_center(&RunConfig::new(flags(), params)?),
        Command::Cohomology { params } => commands::cmd_cohomology(&RunConfig::new(flags(), params)?),
        Command::Verify { suite, params } => suites::run(suite, &RunConfig::new(flags(), params)?),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let report = match run(&cli) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("cyclie: {e}");
            return ExitCode::from(e.exit_code());
        }
    };
    match cli.format {
        Format::Text => print!("{}", report.text()),
        Format::Json => print!("{}", report.json()),
    }
    if let Some(path) = &cli.out {
        if let Err(e) = std::fs::write(path, report.json()) {
            eprintln!("cyclie: {}", CliError::Usage(format!("cannot write {}: {e}", path.display())));
            return ExitCode::from(2);
        }
    }
    if report.passed {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
