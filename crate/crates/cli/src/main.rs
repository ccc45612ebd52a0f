//! `sgpd`: parse semigroupoid files, run the axiom checkers and
//! constructions, and emit deterministic reports.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

mod commands;
mod format;

use sgpd_core::szendrei::DEFAULT_BLOCK_GUARD;

#[derive(Parser)]
#[command(
    name = "sgpd",
    version,
    about = "finite restriction semigroupoid toolkit"
)]
struct Cli {
    /// Emit the report as JSON instead of plain text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Validate a structure file and run the axiom checkers.
    Check { file: PathBuf },
    /// Decide categoricity and print a witness when it fails.
    Categorical { file: PathBuf },
    /// Print the graphing: objects and the domain/range of each element.
    Graph { file: PathBuf },
    /// Build the Szendrei expansion and emit it as a structure file.
    Szendrei {
        file: PathBuf,
        /// Write the expansion to a file instead of stdout.
        #[arg(short, long)]
        out: Option<PathBuf>,
        /// Cap on the size of an identity-relation block.
        #[arg(long, default_value_t = DEFAULT_BLOCK_GUARD)]
        guard: usize,
    },
    /// Build the partial-map embedding and verify its properties.
    Embed { file: PathBuf },
    /// Factorize a premorphism through the expansion of its source.
    Factorize {
        file: PathBuf,
        #[arg(long, default_value_t = DEFAULT_BLOCK_GUARD)]
        guard: usize,
    },
    /// Verify the naturality square of a restriction morphism.
    Naturality {
        file: PathBuf,
        #[arg(long, default_value_t = DEFAULT_BLOCK_GUARD)]
        guard: usize,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let out = match &cli.command {
        Command::Check { file } => commands::check(file),
        Command::Categorical { file } => commands::categorical(file),
        Command::Graph { file } => commands::graph(file),
        Command::Szendrei { file, out, guard } => {
            commands::szendrei_cmd(file, out.as_deref(), *guard)
        }
        Command::Embed { file } => commands::embed(file),
        Command::Factorize { file, guard } => commands::factorize(file, *guard),
        Command::Naturality { file, guard } => commands::naturality(file, *guard),
    };
    if cli.json {
        println!(
            "{}",
            serde_json::to_string_pretty(&out.json).expect("valid json")
        );
    } else {
        print!("{}", out.text);
    }
    ExitCode::from(out.code as u8)
}
