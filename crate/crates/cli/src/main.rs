use std::io::Write;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

mod commands;
mod report;

use commands::{CliError, FrameCase, Outcome};
use report::Format;

/// Exact computations with Gelfand-Fuks cohomology, rigid secondary classes
/// and their detection on framed foliations.
#[derive(Debug, Parser)]
#[command(name = "rigidclass", version, about)]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Table, global = true)]
    format: Format,
    /// Largest cochain complex (number of monomials) a command may build.
    #[arg(long, default_value_t = 1_000_000, global = true)]
    max_dim: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// List the Vey basis of H*(W_q).
    Vey {
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..=100))]
        q: u32,
        #[arg(long)]
        min_degree: Option<u32>,
        #[arg(long)]
        max_degree: Option<u32>,
        /// Keep only rigid classes.
        #[arg(long)]
        rigid_only: bool,
    },
    /// Compute H*(W_q) or H*(WO_q) by exact linear algebra.
    Cohomology {
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..=100))]
        q: u32,
        /// Use W_q (the default).
        #[arg(long, conflicts_with = "unframed")]
        framed: bool,
        /// Use WO_q.
        #[arg(long)]
        unframed: bool,
        #[arg(long)]
        max_degree: Option<u32>,
        /// Print a cocycle representative for each class.
        #[arg(long)]
        representatives: bool,
    },
    /// Certify linear independence of the Pontrjagin monomials V(q).
    Pontrjagin {
        #[arg(long, value_parser = clap::value_parser!(u32).range(2..=40))]
        q: u32,
    },
    /// Detect rigid classes on a framed foliation over a model base.
    Frame {
        #[arg(long, value_enum)]
        case: FrameCase,
        #[arg(long)]
        k: u32,
    },
    /// Twist a nonzero class by Pontrjagin-type generators.
    Permanence {
        #[arg(long)]
        q: u32,
        /// Seed class such as y2c2^3.
        #[arg(long)]
        seed: String,
        /// Indices r of the twisting generators.
        #[arg(long, value_delimiter = ',', required = true)]
        r: Vec<u32>,
    },
    /// List the spherically supported rigid classes for even q.
    Rqs {
        #[arg(long)]
        q: u32,
    },
    /// Count Vey, rigid and spherical rigid classes for q = 1..q-max.
    RigidTable {
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..=40))]
        q_max: u32,
    },
    /// Integer families of frames distinguished by rigid classes in one degree.
    Catalog {
        #[arg(long)]
        q: u32,
        #[arg(long)]
        dim: u32,
    },
    /// Run the built-in acceptance criteria.
    Selftest {
        /// Run a single criterion.
        #[arg(long)]
        criterion: Option<u32>,
    },
}

fn dispatch(cli: &Cli) -> Result<Outcome, CliError> {
    match &cli.command {
        Command::Vey { q, min_degree, max_degree, rigid_only } => {
            commands::vey(*q, *min_degree, *max_degree, *rigid_only, cli.max_dim)
        }
        Command::Cohomology { q, framed: _, unframed, max_degree, representatives } => {
            commands::cohomology(*q, !unframed, *max_degree, *representatives, cli.max_dim)
        }
        Command::Pontrjagin { q } => commands::pontrjagin(*q),
        Command::Frame { case, k } => {
            if *k < 2 {
                return Err(CliError::Usage(format!("--k must be at least 2, got {k}")));
            }
            commands::frame(*case, *k, cli.max_dim)
        }
        Command::Permanence { q, seed, r } => commands::permanence(*q, seed, r),
        Command::Rqs { q } => commands::rqs(*q),
        Command::RigidTable { q_max } => commands::rigid_table(*q_max),
        Command::Catalog { q, dim } => commands::catalog(*q, *dim),
        Command::Selftest { criterion } => commands::run_selftest(*criterion),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => e.exit(),
    };
    match dispatch(&cli) {
        Ok(Outcome { report, status }) => {
            let mut out = std::io::stdout().lock();
            if out.write_all(report.render(cli.format).as_bytes()).is_err() {
                return ExitCode::from(1);
            }
            ExitCode::from(status)
        }
        Err(e) => {
            eprintln!("error: {}", e.message());
            ExitCode::from(e.exit_code())
        }
    }
}
