//! Command-line surface for `plov-core`: input parsing, subcommands, report
//! documents and exit codes.

pub mod commands;
pub mod input;
pub mod report;
pub mod selftest;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use plov_core::Exec;

use crate::commands::{FormChoice, HChoice};
use crate::input::parse_input;
use crate::report::Outcome;

#[derive(Debug, Parser)]
#[command(name = "plov", version, about = "Exact invariants of quasi-unipotent matrices")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Write the report document here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,

    /// Run every pipeline on one thread.
    #[arg(long, global = true)]
    pub sequential: bool,
}

#[derive(Debug, Args)]
pub struct InputArg {
    /// JSON document {"name"?: string, "matrix": [[int | "p/q", ...], ...]}.
    #[arg(long)]
    pub input: PathBuf,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Full pipeline: quasi-unipotency, Jordan profile, plov, exponents, bound checks.
    Analyze {
        #[command(flatten)]
        input: InputArg,
        /// Cohomology degrees for growth exponents (default 1..=2g).
        #[arg(long, value_delimiter = ',')]
        degrees: Option<Vec<usize>>,
    },
    /// Power-sum determinant P(n) with oracle agreement at n = 1..=samples.
    Powersum {
        #[command(flatten)]
        input: InputArg,
        #[arg(long, value_enum, default_value = "identity")]
        h: HChoice,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 9)]
        samples: u64,
    },
    /// Growth exponents on the given cohomology degrees.
    Growth {
        #[command(flatten)]
        input: InputArg,
        #[arg(long, value_delimiter = ',', required = true)]
        degrees: Vec<usize>,
    },
    /// Exterior-algebra model: degree of Delta_n^g and the vanishing scan.
    Model {
        #[command(flatten)]
        input: InputArg,
        #[arg(long, value_enum, default_value = "standard")]
        form: FormChoice,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Randomized self-test suites.
    Selftest {
        #[arg(long, default_value_t = selftest::DEFAULT_MAX_SIZE)]
        max_size: usize,
        #[arg(long, default_value_t = selftest::DEFAULT_CASES)]
        cases: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Analyze { .. } => "analyze",
            Command::Powersum { .. } => "powersum",
            Command::Growth { .. } => "growth",
            Command::Model { .. } => "model",
            Command::Selftest { .. } => "selftest",
        }
    }

    fn input(&self) -> Option<&InputArg> {
        match self {
            Command::Analyze { input, .. }
            | Command::Powersum { input, .. }
            | Command::Growth { input, .. }
            | Command::Model { input, .. } => Some(input),
            Command::Selftest { .. } => None,
        }
    }
}

/// Runs a parsed command line.
pub fn run(cli: &Cli) -> Outcome {
    let exec = if cli.sequential { Exec::Sequential } else { Exec::default() };
    let doc = match cli.command.input() {
        None => None,
        Some(arg) => {
            let bytes = match std::fs::read(&arg.input) {
                Ok(b) => b,
                Err(e) => {
                    let doc = report::ReportDocument::new(cli.command.name());
                    return Outcome::invalid_flag(doc, &format!("cannot read {}: {e}", arg.input.display()));
                }
            };
            match parse_input(&bytes) {
                Ok(d) => Some(d),
                Err(e) => return Outcome::invalid_input(cli.command.name(), &e),
            }
        }
    };
    match &cli.command {
        Command::Analyze { degrees, .. } => commands::analyze(doc.as_ref().unwrap(), degrees.clone(), exec),
        Command::Powersum { h, seed, samples, .. } => {
            commands::powersum(doc.as_ref().unwrap(), *h, *seed, *samples, exec)
        }
        Command::Growth { degrees, .. } => commands::growth(doc.as_ref().unwrap(), degrees, exec),
        Command::Model { form, seed, .. } => commands::model(doc.as_ref().unwrap(), *form, *seed, exec),
        Command::Selftest { max_size, cases, seed } => selftest::selftest(*max_size, *cases, *seed, exec),
    }
}

/// Parses arguments, runs, writes the report and summary, and returns the
/// process exit code.
pub fn main_with_args<I, T>(args: I) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    let outcome = run(&cli);
    let json = outcome.doc.to_json();
    let written = match &cli.out {
        Some(path) => std::fs::write(path, &json),
        None => std::io::stdout().lock().write_all(json.as_bytes()),
    };
    if let Err(e) = written {
        eprintln!("error: cannot write report: {e}");
        return 1;
    }
    let stderr = std::io::stderr();
    let mut err = stderr.lock();
    for line in &outcome.summary {
        let _ = writeln!(err, "{line}");
    }
    outcome.exit_code()
}
