//! `compactify`: JSON front end for root-system combinatorics, little
//! brothers, normality and smoothness verdicts and the representation oracle.

mod commands;
mod config;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};
use thiserror::Error;

use compactify::Error as CoreError;

use config::{Overrides, Settings, ENV_MAX_CANDIDATES};

pub const SCHEMA: &str = "compactify/1";

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{argument}: {source}")]
    Argument { argument: String, source: CoreError },

    #[error(transparent)]
    Core(#[from] CoreError),

    #[error("{0}")]
    Usage(String),

    #[error("config line {line}: {message}")]
    Config { line: usize, message: String },

    #[error("{name}: `{value}` is not a non-negative integer")]
    Env { name: &'static str, value: String },
}

impl CliError {
    fn core(&self) -> Option<&CoreError> {
        match self {
            CliError::Argument { source, .. } => Some(source),
            CliError::Core(e) => Some(e),
            _ => None,
        }
    }

    pub fn exit_code(&self) -> u8 {
        match self.core() {
            Some(CoreError::NotSimple(_)) => 2,
            Some(CoreError::ResourceCap { .. }) => 3,
            Some(CoreError::Inconsistent(_)) => 4,
            _ => 1,
        }
    }

    fn kind(&self) -> &'static str {
        match self {
            CliError::Usage(_) => "usage",
            CliError::Config { .. } => "config",
            CliError::Env { .. } => "environment",
            _ => match self.core() {
                Some(CoreError::Parse { .. }) => "parse",
                Some(CoreError::NotSimple(_)) => "not_simple",
                Some(CoreError::ResourceCap { .. }) => "resource_cap",
                Some(CoreError::Inconsistent(_)) => "internal",
                _ => "invalid_input",
            },
        }
    }

    fn to_json(&self) -> Value {
        let mut e = Map::new();
        e.insert("kind".into(), json!(self.kind()));
        e.insert("message".into(), json!(self.to_string()));
        match self {
            CliError::Argument { argument, .. } => {
                e.insert("argument".into(), json!(argument));
            }
            CliError::Config { line, .. } => {
                e.insert("line".into(), json!(line));
            }
            _ => {}
        }
        if let Some(CoreError::Parse { position, .. }) = self.core() {
            e.insert("position".into(), json!(position));
        }
        json!({ "schema": SCHEMA, "error": e })
    }
}

#[derive(Debug, Parser)]
#[command(name = "compactify", version)]
#[command(about = "Normality, factoriality and smoothness of simple linear compactifications")]
pub struct Cli {
    /// Indent the JSON output.
    #[arg(long, global = true)]
    pretty: bool,

    /// Accepted for compatibility; output is always JSON.
    #[arg(long, global = true, hide = true)]
    json: bool,

    /// File of `key = value` lines setting max_candidates, max_weights,
    /// max_components or pretty.
    #[arg(long, global = true)]
    config: Option<PathBuf>,

    /// Cap on enumerated candidate weights (overrides COMPACTIFY_MAX_CANDIDATES).
    #[arg(long, global = true)]
    max_candidates: Option<u64>,

    /// Cap on distinct weights of one character in the oracle.
    #[arg(long, global = true)]
    max_weights: Option<usize>,

    /// Cap on live components of an iterated tensor product in the oracle.
    #[arg(long, global = true)]
    max_components: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Cartan matrix, roots and character lattice of a group.
    Info { group: String },

    /// Compare nu and mu under every dominance order.
    Compare {
        group: String,
        #[arg(allow_hyphen_values = true)]
        nu: String,
        #[arg(allow_hyphen_values = true)]
        mu: String,
        /// Dominant weight for the lambda-orders.
        #[arg(long)]
        lambda: Option<String>,
    },

    /// Maximal elements of a `;`-separated weight set.
    Maximal {
        group: String,
        #[arg(long, allow_hyphen_values = true)]
        set: String,
        #[arg(long, value_enum, default_value_t = OrderArg::Rational)]
        order: OrderArg,
        #[arg(long)]
        lambda: Option<String>,
    },

    /// Dominant weights of V(lambda).
    PiPlus { group: String, lambda: String },

    /// Dominant weights of the group below lambda in rational dominance.
    PiGPlus { group: String, lambda: String },

    /// Weyl orbit and dominant conjugate of a weight.
    Orbit {
        group: String,
        #[arg(allow_hyphen_values = true)]
        weight: String,
    },

    /// Adjoint and rational little brothers of lambda.
    LittleBrothers { group: String, lambda: String },

    /// Verdicts for the compactification of a simple weight set.
    Classify {
        group: String,
        /// Dominant weights separated by `;`.
        #[arg(long)]
        pi: String,
        #[arg(long, value_enum, default_value_t = QuestionArg::All)]
        question: QuestionArg,
    },

    /// Factoriality and smoothness table over all supports of simple groups.
    Sweep {
        #[arg(long, default_value_t = 3)]
        max_rank: usize,
        #[arg(long, value_enum, default_value_t = LatticeChoice::All)]
        lattices: LatticeChoice,
    },

    /// Brute-force representation theory.
    #[command(subcommand)]
    Oracle(OracleCommand),
}

#[derive(Debug, Subcommand)]
pub enum OracleCommand {
    /// Dominant weight multiplicities of V(lambda).
    Multiplicities { group: String, lambda: String },

    /// Decomposition of V(lambda) ⊗ V(mu).
    Tensor { group: String, lambda: String, mu: String },

    /// Whether V(nu) occurs in the tensor product of `;`-separated factors.
    Contains {
        group: String,
        nu: String,
        #[arg(long)]
        factors: String,
    },

    /// Whether V(nu) occurs in V(mu_1) ⊗ ... ⊗ V(mu_k) for each multiset of
    /// k elements of the dominant weights below lambda.
    Products {
        group: String,
        lambda: String,
        nu: String,
        #[arg(long, default_value_t = 2)]
        degree: usize,
    },

    /// Dominant conjugate of w lambda + w' mu; words are 1-based indices.
    Prv {
        group: String,
        lambda: String,
        mu: String,
        #[arg(long, default_value = "")]
        w: String,
        #[arg(long, default_value = "")]
        w_prime: String,
    },

    /// Searches V(target + n lambda) in products of n elements of Pi.
    Omega {
        group: String,
        #[arg(long)]
        pi: String,
        #[arg(long, allow_hyphen_values = true)]
        target: String,
        #[arg(long, default_value_t = 3)]
        max_n: usize,
    },

    /// Brute-force normality check against the little-brother criterion.
    VerifyNormality {
        group: String,
        #[arg(long)]
        pi: String,
        #[arg(long, default_value_t = 3)]
        max_n: usize,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OrderArg {
    Dominance,
    Rational,
    Lambda,
    LambdaRational,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum QuestionArg {
    Normality,
    #[value(alias = "factorial")]
    QFactoriality,
    LocalFactoriality,
    Smoothness,
    All,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum LatticeChoice {
    Sc,
    Ad,
    All,
}

/// Runs a parsed invocation; returns the exit code and the JSON document.
pub fn run(cli: Cli) -> (u8, String) {
    let flags = Overrides {
        max_candidates: cli.max_candidates,
        max_weights: cli.max_weights,
        max_components: cli.max_components,
        pretty: cli.pretty,
    };
    let env = std::env::var(ENV_MAX_CANDIDATES).ok();
    let result = Settings::resolve(cli.config.as_deref(), env.as_deref(), flags).and_then(|s| {
        commands::execute(&cli.command, &s).map(|v| (v, s.pretty))
    });
    match result {
        Ok((mut v, pretty)) => {
            if let Value::Object(m) = &mut v {
                m.insert("schema".into(), json!(SCHEMA));
            }
            (0, render(&v, pretty))
        }
        Err(e) => (e.exit_code(), render(&e.to_json(), cli.pretty)),
    }
}

fn render(v: &Value, pretty: bool) -> String {
    let mut s = if pretty {
        serde_json::to_string_pretty(v)
    } else {
        serde_json::to_string(v)
    }
    .expect("JSON values serialize");
    s.push('\n');
    s
}

fn emit(doc: &str) {
    let mut out = std::io::stdout().lock();
    let _ = out.write_all(doc.as_bytes());
    let _ = out.flush();
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let err = CliError::Usage(e.render().to_string().trim().to_string());
            emit(&render(&err.to_json(), false));
            let _ = e.print();
            return ExitCode::from(err.exit_code());
        }
    };
    let (code, doc) = run(cli);
    emit(&doc);
    if code != 0 {
        if let Ok(Value::Object(m)) = serde_json::from_str::<Value>(&doc) {
            if let Some(msg) = m.get("error").and_then(|e| e.get("message")) {
                eprintln!("error: {}", msg.as_str().unwrap_or_default());
            }
        }
    }
    ExitCode::from(code)
}
