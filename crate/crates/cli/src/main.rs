use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use stratifold::DEFAULT_LIMIT;
use stratifold_cli::commands::{self, CensusArgs, Emit, EngineArg, Format};

/// Simple-connectivity checks and censuses of trivalent 2-stratifolds.
#[derive(Parser)]
#[command(author, version, about, long_about = None)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide whether a graph document describes a simply connected 2-stratifold
    Check {
        path: PathBuf,
        /// Also print the reduced graph and any horned tree found in it
        #[arg(long)]
        verbose: bool,
    },
    /// Print a presentation of the fundamental group
    Pi1 { path: PathBuf },
    /// Count simply connected graphs with n white vertices
    Census {
        #[arg(short = 'n', long = "white-vertices")]
        n: usize,
        #[arg(long, value_enum, default_value_t = EngineArg::All)]
        engine: EngineArg,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        /// Only show graphs with this many degree-3 black vertices
        #[arg(short = 'b', long = "black3")]
        black3: Option<usize>,
        /// Largest n the exhaustive engines will run for
        #[arg(long, default_value_t = DEFAULT_LIMIT)]
        limit: usize,
    },
    /// Write every simply connected graph with n white vertices to a directory
    Enumerate {
        #[arg(short = 'n', long = "white-vertices")]
        n: usize,
        #[arg(long)]
        out: PathBuf,
        #[arg(long, value_enum, default_value_t = Emit::Documents)]
        emit: Emit,
        #[arg(long, default_value_t = DEFAULT_LIMIT)]
        limit: usize,
    },
    /// Print R_n, M_n and U_n as CSV
    Tables {
        #[arg(long)]
        max_n: usize,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let stdout = io::stdout();
    let mut out = stdout.lock();
    let result = match cli.command {
        Command::Check { path, verbose } => commands::check(&path, verbose, &mut out),
        Command::Pi1 { path } => commands::pi1(&path, &mut out),
        Command::Census {
            n,
            engine,
            format,
            black3,
            limit,
        } => commands::census_cmd(
            &CensusArgs {
                n,
                engine,
                format,
                b_filter: black3,
                limit,
            },
            &mut out,
        ),
        Command::Enumerate {
            n,
            out: dir,
            emit,
            limit,
        } => commands::enumerate(n, &dir, emit, limit, &mut out),
        Command::Tables { max_n } => commands::tables(max_n, &mut out),
    };
    let _ = out.flush();
    match result {
        Ok(status) => ExitCode::from(status.code()),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.status().code())
        }
    }
}
