//! Command-line front end: documents, commands, demos and certificate replay.
//!
//! Reports go to standard output as JSON; a one-line summary goes to
//! standard error. Exit codes: `0` verified or constructed, `1` property
//! failed (the report carries a certificate), `2` input error.

mod certificate;
mod commands;
mod demos;
pub mod document;
pub mod json;
pub mod report;

use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

pub use certificate::check_certificate;
pub use commands::run_command;
pub use demos::DEMOS;
pub use document::{parse_document, Base, Document, Workspace};
pub use report::{Response, Status};

use crate::error::Error;

#[derive(Parser, Debug, Clone)]
#[command(name = "starmorita", version, about = "Exact *-algebras, GNS, Rieffel induction and Morita equivalence")]
pub struct Cli {
    /// Input document (JSON).
    #[arg(long, global = true)]
    pub doc: Option<PathBuf>,
    /// Seed for randomized witness searches.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum LevelArg {
    Rigged,
    Equivalence,
}

#[derive(Subcommand, Debug, Clone, PartialEq, Eq)]
pub enum Command {
    /// Build and validate every declared object.
    Validate,
    /// Decide positive semi-definiteness of a named or inline matrix.
    Psd { matrix: String },
    /// GNS representation of a functional.
    Gns { algebra: String, functional: String },
    /// Rieffel induction of a representation through a bimodule.
    Induce { bimodule: String, rep: String },
    /// Check the bimodule axioms.
    VerifyBimodule {
        bimodule: String,
        #[arg(long, value_enum, default_value_t = LevelArg::Equivalence)]
        level: LevelArg,
    },
    /// Induce through the bimodule and back through its conjugate.
    Roundtrip { bimodule: String, rep: String },
    /// Morita context maps and the center isomorphism.
    Context { bimodule: String },
    /// Classical limit of a module, representation or bimodule.
    ClassicalLimit { object: String },
    /// Induction commutes with the classical limit.
    Naturality { bimodule: String, rep: String },
    /// Built-in example families.
    Demo {
        name: String,
        #[arg(long)]
        n: Option<usize>,
    },
    /// Replay a certificate (or a report containing one).
    CheckCertificate { path: PathBuf },
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Validate => "validate",
            Command::Psd { .. } => "psd",
            Command::Gns { .. } => "gns",
            Command::Induce { .. } => "induce",
            Command::VerifyBimodule { .. } => "verify-bimodule",
            Command::Roundtrip { .. } => "roundtrip",
            Command::Context { .. } => "context",
            Command::ClassicalLimit { .. } => "classical-limit",
            Command::Naturality { .. } => "naturality",
            Command::Demo { .. } => "demo",
            Command::CheckCertificate { .. } => "check-certificate",
        }
    }

    /// Positional arguments and flags after the command name.
    pub fn args(&self) -> Vec<String> {
        let s = |x: &str| x.to_string();
        match self {
            Command::Validate => vec![],
            Command::Psd { matrix } => vec![s(matrix)],
            Command::Gns { algebra, functional } => vec![s(algebra), s(functional)],
            Command::Induce { bimodule, rep }
            | Command::Roundtrip { bimodule, rep }
            | Command::Naturality { bimodule, rep } => vec![s(bimodule), s(rep)],
            Command::VerifyBimodule { bimodule, level } => vec![
                s(bimodule),
                s("--level"),
                s(match level {
                    LevelArg::Rigged => "rigged",
                    LevelArg::Equivalence => "equivalence",
                }),
            ],
            Command::Context { bimodule } => vec![s(bimodule)],
            Command::ClassicalLimit { object } => vec![s(object)],
            Command::Demo { name, n } => {
                let mut v = vec![s(name)];
                if let Some(n) = n {
                    v.extend([s("--n"), n.to_string()]);
                }
                v
            }
            Command::CheckCertificate { path } => vec![path.display().to_string()],
        }
    }

    /// Parses `[name, args...]` as produced by [`Command::name`] and
    /// [`Command::args`].
    pub fn from_args(name: &str, args: &[String]) -> Result<Command, Error> {
        let argv = std::iter::once("starmorita".to_string())
            .chain(std::iter::once(name.to_string()))
            .chain(args.iter().cloned());
        Cli::try_parse_from(argv)
            .map(|c| c.command)
            .map_err(|e| Error::UnknownCommand(e.to_string()))
    }
}

/// Everything a process invocation produces.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub exit_code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Parses `argv` (including the program name) and runs the command.
pub fn run<I, S>(argv: I) -> Outcome
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => Outcome {
                    exit_code: 0,
                    stdout: e.to_string(),
                    stderr: String::new(),
                },
                _ => {
                    let err = Error::UnknownCommand(e.to_string().lines().next().unwrap_or("").to_string());
                    let resp = Response::input_error(&err);
                    Outcome {
                        exit_code: 2,
                        stdout: render(&resp.to_json("")),
                        stderr: e.to_string(),
                    }
                }
            };
        }
    };
    let doc = match &cli.doc {
        None => None,
        Some(path) => match std::fs::read_to_string(path)
            .map_err(|e| Error::SyntaxError {
                path: path.display().to_string(),
                message: e.to_string(),
            })
            .and_then(|text| parse_document(&text))
        {
            Ok(d) => Some(d),
            Err(e) => return outcome(cli.command.name(), &Response::input_error(&e)),
        },
    };
    let resp = run_command(doc.as_ref(), &cli.command, cli.seed);
    outcome(cli.command.name(), &resp)
}

fn render(v: &serde_json::Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

fn outcome(command: &str, resp: &Response) -> Outcome {
    Outcome {
        exit_code: resp.status.exit_code(),
        stdout: render(&resp.to_json(command)),
        stderr: format!("{command}: {}\n", resp.summary),
    }
}

#[cfg(test)]
mod tests;
