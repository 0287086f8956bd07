//! Command line front end for `leveler-core`.
//!
//! Every invocation runs one subcommand and exits with 0 for a definite
//! answer, 2 when a budgeted search gave up, and 1 for usage or input
//! errors. With `--json` a single document
//! `{command, input, result, budget, elapsed_ms}` is written to stdout.

mod commands;
pub mod suite;

use std::ffi::OsString;
use std::io::Write;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use leveler_core::Budget;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

pub use suite::{paper_suite, SuiteResult, SuiteStatus, SUITE_SCHEMA};

/// Overrides the default node budget when `--budget-nodes` is absent.
pub const BUDGET_ENV: &str = "LEVELER_BUDGET_NODES";

pub const DEFAULT_BUDGET_NODES: usize = leveler_core::equiv::DEFAULT_MAX_NODES;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("usage: {0}")]
    Usage(String),
    #[error("{0}")]
    Input(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputMode {
    Text,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunConfig {
    pub budget_nodes: usize,
    /// `None` means `2 * longest input + 8`.
    pub budget_len: Option<usize>,
    pub workers: usize,
    pub output: OutputMode,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            budget_nodes: DEFAULT_BUDGET_NODES,
            budget_len: None,
            workers: 1,
            output: OutputMode::Text,
        }
    }
}

impl RunConfig {
    fn resolve(opts: &GlobalOpts, env_nodes: Option<&str>) -> Result<Self, CliError> {
        let env_nodes = match env_nodes {
            Some(text) => Some(text.trim().parse::<usize>().map_err(|_| {
                CliError::Usage(format!(
                    "{BUDGET_ENV} must be a positive integer, got {text:?}"
                ))
            })?),
            None => None,
        };
        let config = RunConfig {
            budget_nodes: opts
                .budget_nodes
                .or(env_nodes)
                .unwrap_or(DEFAULT_BUDGET_NODES),
            budget_len: opts.budget_len,
            workers: opts.workers.unwrap_or(1),
            output: if opts.json {
                OutputMode::Json
            } else {
                OutputMode::Text
            },
        };
        config
            .budget()
            .validate()
            .map_err(|e| CliError::Usage(e.to_string()))?;
        Ok(config)
    }

    pub fn budget(&self) -> Budget {
        Budget {
            max_len: self.budget_len,
            max_nodes: self.budget_nodes,
            workers: self.workers,
        }
    }

    fn to_json(self) -> Value {
        json!({
            "nodes": self.budget_nodes,
            "len": self.budget_len,
            "workers": self.workers,
        })
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "leveler",
    version,
    about = "Words in the reduced 2-braid group of the torus"
)]
struct Cli {
    #[command(flatten)]
    opts: GlobalOpts,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct GlobalOpts {
    /// Maximum number of discovered words per search.
    #[arg(long, global = true, value_name = "N")]
    budget_nodes: Option<usize>,
    /// Maximum word length during searches (default 2 * longest input + 8).
    #[arg(long, global = true, value_name = "L")]
    budget_len: Option<usize>,
    /// Worker threads for frontier expansion.
    #[arg(long, global = true, value_name = "W")]
    workers: Option<usize>,
    /// Emit one JSON document instead of text.
    #[arg(long, global = true)]
    json: bool,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Torus word of type (P, Q).
    #[command(allow_negative_numbers = true)]
    TorusWord { p: i64, q: i64 },
    /// Torus type of WORD, if it is a torus word.
    Recognize { word: String },
    /// All-even continued fraction of P/Q.
    #[command(allow_negative_numbers = true)]
    Conway { p: String, q: String },
    /// Value of the continued fraction E1,E2,...
    CfValue {
        #[arg(allow_hyphen_values = true, value_name = "E1,E2,...")]
        entries: String,
    },
    /// Braid description of a (1,1)-position of the 2-bridge knot P/Q.
    #[command(allow_negative_numbers = true)]
    Describe {
        p: String,
        q: String,
        #[arg(long, value_name = "rho1|rho2")]
        position: String,
        /// Use this expansion of P/Q instead of the all-even one.
        #[arg(long, allow_hyphen_values = true, value_name = "E1,E2,...")]
        expansion: Option<String>,
    },
    /// Level-number bound from a continued fraction.
    LevelBound {
        #[arg(long, value_name = "all-even|even-odd|odd-even")]
        form: String,
        #[arg(allow_hyphen_values = true, value_name = "E1,E2,...")]
        entries: String,
    },
    /// Expansion of P/Q with the smallest level-number bound.
    #[command(allow_negative_numbers = true)]
    Optimize {
        p: String,
        q: String,
        #[arg(long, value_name = "rho1|rho2")]
        position: String,
        #[arg(long, value_name = "N")]
        max_entry: Option<String>,
        #[arg(long, value_name = "N")]
        max_len: Option<usize>,
    },
    /// Canonical form, parity triple and (1,1)-reduction of WORD.
    Simplify { word: String },
    /// Decide whether two words are equal in the group.
    Equiv { w1: String, w2: String },
    /// Decide whether two words are (1,1)-equivalent.
    Equiv11 { w1: String, w2: String },
    /// Factor WORD into torus words separated by powers of s.
    Parse11 { word: String },
    /// Upper bound on the (1,1)-length of WORD.
    OneOneLength { word: String },
    /// Run the regression suite of published examples.
    PaperSuite {
        /// Print the JSON schema of the suite document and exit.
        #[arg(long)]
        schema: bool,
    },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::TorusWord { .. } => "torus-word",
            Command::Recognize { .. } => "recognize",
            Command::Conway { .. } => "conway",
            Command::CfValue { .. } => "cf-value",
            Command::Describe { .. } => "describe",
            Command::LevelBound { .. } => "level-bound",
            Command::Optimize { .. } => "optimize",
            Command::Simplify { .. } => "simplify",
            Command::Equiv { .. } => "equiv",
            Command::Equiv11 { .. } => "equiv11",
            Command::Parse11 { .. } => "parse11",
            Command::OneOneLength { .. } => "one-one-length",
            Command::PaperSuite { .. } => "paper-suite",
        }
    }

    fn input(&self) -> Value {
        match self {
            Command::TorusWord { p, q } => json!({ "p": p, "q": q }),
            Command::Recognize { word }
            | Command::Simplify { word }
            | Command::Parse11 { word }
            | Command::OneOneLength { word } => json!({ "word": word }),
            Command::Conway { p, q } => json!({ "p": p, "q": q }),
            Command::CfValue { entries } => json!({ "entries": entries }),
            Command::Describe {
                p,
                q,
                position,
                expansion,
            } => {
                json!({ "p": p, "q": q, "position": position, "expansion": expansion })
            }
            Command::LevelBound { form, entries } => json!({ "form": form, "entries": entries }),
            Command::Optimize {
                p,
                q,
                position,
                max_entry,
                max_len,
            } => json!({
                "p": p, "q": q, "position": position, "max_entry": max_entry, "max_len": max_len,
            }),
            Command::Equiv { w1, w2 } | Command::Equiv11 { w1, w2 } => {
                json!({ "w1": w1, "w2": w2 })
            }
            Command::PaperSuite { .. } => json!({}),
        }
    }
}

/// How an invocation ended, before it is mapped to an exit code.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Status {
    Definite,
    Unknown,
    /// Only the regression suite: some case did not match.
    Failed,
}

impl Status {
    fn code(self) -> i32 {
        match self {
            Status::Definite => 0,
            Status::Unknown => 2,
            Status::Failed => 1,
        }
    }
}

pub(crate) struct Outcome {
    pub result: Value,
    pub text: String,
    pub status: Status,
}

/// Runs one invocation with the process environment.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let env_nodes = std::env::var(BUDGET_ENV).ok();
    run_with_env(argv, env_nodes.as_deref(), out, err)
}

/// Like [`run`], with the value of `LEVELER_BUDGET_NODES` passed in.
pub fn run_with_env<I, T>(
    argv: I,
    env_nodes: Option<&str>,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let shown = matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion);
            if shown {
                let _ = write!(out, "{e}");
                return 0;
            }
            let _ = write!(err, "{e}");
            return 1;
        }
    };
    let config = match RunConfig::resolve(&cli.opts, env_nodes) {
        Ok(config) => config,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return 1;
        }
    };
    if let Command::PaperSuite { schema: true } = cli.command {
        let _ = writeln!(out, "{SUITE_SCHEMA}");
        return 0;
    }

    let started = Instant::now();
    let outcome = commands::dispatch(&cli.command, &config);
    let elapsed_ms = started.elapsed().as_millis() as u64;
    let json_doc = |result: Value| {
        json!({
            "command": cli.command.name(),
            "input": cli.command.input(),
            "result": result,
            "budget": config.to_json(),
            "elapsed_ms": elapsed_ms,
        })
    };
    match outcome {
        Ok(o) => {
            let _ = match config.output {
                OutputMode::Text => writeln!(out, "{}", o.text),
                OutputMode::Json => writeln!(out, "{}", render(&json_doc(o.result))),
            };
            o.status.code()
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            if config.output == OutputMode::Json {
                let _ = writeln!(
                    out,
                    "{}",
                    render(&json_doc(json!({ "error": e.to_string() })))
                );
            }
            1
        }
    }
}

/// Pretty JSON with keys in sorted order, so that parsing and re-rendering a
/// document reproduces it byte for byte.
pub fn render(doc: &Value) -> String {
    serde_json::to_string_pretty(doc).expect("JSON values serialize")
}
