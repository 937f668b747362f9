//! Command-line front end.

use std::path::PathBuf;

use algebroid::SampleConfig;
use clap::{Parser, Subcommand, ValueEnum};

use crate::commands::{run, Command};
use crate::error::DslError;
use crate::report::Report;

#[derive(Debug, Parser)]
#[command(name = "algebroid", version, about = "Check Lie algebroid pairs declared in a structure file")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Cmd,
    /// Seed of the sample streams.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Maximum total degree of sampled polynomial coefficients.
    #[arg(long, global = true, default_value_t = 2)]
    pub degree: u32,
    /// Seeded samples per check, in addition to frame elements.
    #[arg(long, global = true, default_value_t = 32)]
    pub trials: usize,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Subcommand)]
pub enum Cmd {
    /// Check the axioms of every algebroid, cocycle and Jacobi structure.
    Validate { file: PathBuf },
    /// Run the compatibility, duality and bracket checks on a pair.
    CheckPair { file: PathBuf, name: String },
    /// Emit the dual pair and check it.
    Dualize { file: PathBuf, name: String },
    /// Print the induced Jacobi structure of a pair and check it.
    Induce { file: PathBuf, name: String },
    /// Build the triangular pair of an algebroid, cocycle and bivector.
    Triangular { file: PathBuf, algebroid: String, cocycle: String, bivector: String },
    /// Build the 1-jet pair of a Jacobi structure.
    Jacobi { file: PathBuf, name: String },
    /// Check a declared morphism, or the canonical morphism of a pair.
    Morphism { file: PathBuf, name: String },
}

impl Cmd {
    fn split(&self) -> (&PathBuf, Command) {
        match self {
            Cmd::Validate { file } => (file, Command::Validate),
            Cmd::CheckPair { file, name } => (file, Command::CheckPair(name.clone())),
            Cmd::Dualize { file, name } => (file, Command::Dualize(name.clone())),
            Cmd::Induce { file, name } => (file, Command::Induce(name.clone())),
            Cmd::Triangular { file, algebroid, cocycle, bivector } => (
                file,
                Command::Triangular {
                    algebroid: algebroid.clone(),
                    cocycle: cocycle.clone(),
                    bivector: bivector.clone(),
                },
            ),
            Cmd::Jacobi { file, name } => (file, Command::Jacobi(name.clone())),
            Cmd::Morphism { file, name } => (file, Command::Morphism(name.clone())),
        }
    }
}

/// What the process prints and returns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Output {
    pub stdout: String,
    pub stderr: String,
    pub exit_code: i32,
}

pub fn execute(cli: &Cli) -> Output {
    let (path, cmd) = cli.command.split();
    let label = cmd.label();
    let (report, exit_code) = match SampleConfig::new(cli.seed, cli.degree, cli.trials) {
        Err(e) => (Report::failed(label, cli.seed, &DslError::command(e.to_string())), 2),
        Ok(config) => match std::fs::read_to_string(path) {
            Err(e) => {
                let err = DslError::command(format!("cannot read {}: {e}", path.display()));
                (Report::failed(label, cli.seed, &err), 2)
            }
            Ok(src) => {
                let out = run(&cmd, &src, &config);
                (out.report, out.exit_code)
            }
        },
    };
    let stderr = match &report.error {
        Some(e) if e.line > 0 => format!("{}:{}:{}: {} error: {}\n", path.display(), e.line, e.column, e.kind, e.message),
        Some(e) => format!("{}: {} error: {}\n", path.display(), e.kind, e.message),
        None => String::new(),
    };
    let stdout = match cli.format {
        Format::Json => report.to_json(),
        Format::Text if report.error.is_some() => String::new(),
        Format::Text => report.to_text(),
    };
    Output { stdout, stderr, exit_code }
}
