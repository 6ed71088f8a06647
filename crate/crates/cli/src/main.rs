//! `versal`: command-line front end for exact Jordan structure, miniversal
//! deformations and partition strata.

mod commands;
mod input;
mod report;

use std::io::Write;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use crate::report::RunReport;

#[derive(Debug)]
pub enum CliError {
    /// Malformed input or arguments (exit 2).
    Input(String),
    /// A mathematical obstruction such as an irrational spectrum (exit 1).
    Domain(versal_core::Error),
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Input(msg) => write!(f, "input error: {msg}"),
            CliError::Domain(e) => write!(f, "error: {e}"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Greedy,
    Structured,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ActionArg {
    Conjugation,
    Projective,
}

#[derive(Parser, Debug)]
#[command(
    name = "versal",
    version,
    about = "Exact Jordan types, miniversal deformations and matrix strata"
)]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print the Jordan type of a matrix.
    Jordan {
        /// Matrix document (`-` for stdin).
        file: String,
    },
    /// Place a matrix in its stratum and report parameter counts.
    Classify { file: String },
    /// Build a miniversal deformation and certify transversality.
    Miniversal {
        file: String,
        #[arg(long, value_enum, default_value_t = Method::Greedy)]
        method: Method,
    },
    /// Tabulate the strata of gl(n).
    Strata {
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..=30))]
        n: u64,
        #[arg(long, value_enum, default_value_t = ActionArg::Conjugation)]
        action: ActionArg,
    },
    /// Decide whether a jump deformation exists between two matrices or types.
    Jump {
        #[arg(long)]
        from: String,
        #[arg(long)]
        to: String,
    },
    /// Run the invariant suites up to the given size.
    Verify {
        #[arg(long = "max-n", default_value_t = 4, value_parser = clap::value_parser!(u64).range(1..=8))]
        max_n: u64,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let echo = std::env::args().skip(1).collect::<Vec<_>>().join(" ");
    let result = match &cli.command {
        Command::Jordan { file } => commands::jordan(file),
        Command::Classify { file } => commands::classify(file),
        Command::Miniversal { file, method } => commands::miniversal(file, *method),
        Command::Strata { n, action } => commands::strata(*n as usize, *action),
        Command::Jump { from, to } => commands::jump(from, to),
        Command::Verify { max_n } => commands::verify(*max_n as usize),
    };
    match result {
        Ok(outcome) => {
            let report = RunReport::new(echo, &outcome);
            let rendered = match cli.format {
                Format::Json => report.to_json_string() + "\n",
                Format::Text => report.to_text(&outcome),
            };
            // A closed pipe (e.g. `| head`) is not an error worth reporting.
            let mut stdout = std::io::stdout().lock();
            if let Err(e) = stdout
                .write_all(rendered.as_bytes())
                .and_then(|()| stdout.flush())
            {
                if e.kind() != std::io::ErrorKind::BrokenPipe {
                    eprintln!("error: writing output: {e}");
                    return ExitCode::from(2);
                }
            }
            ExitCode::from(outcome.exit_code)
        }
        Err(e) => {
            eprintln!("{e}");
            ExitCode::from(match e {
                CliError::Input(_) => 2,
                CliError::Domain(_) => 1,
            })
        }
    }
}
