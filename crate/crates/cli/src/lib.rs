//! The `leafalg` command-line tool: loads a JSON description of a variety
//! with a Lie algebra of vector fields and prints invariants as text or JSON.

use std::ffi::OsString;
use std::fmt;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

mod commands;
mod input;

pub use input::{load_input, parse_document, InputDocument};

/// Failure of a command: malformed input (exit 2) or a mathematical
/// precondition that does not hold (exit 1).
#[derive(Debug)]
pub enum CliError {
    Input { path: String, message: String },
    Domain(leafalg::Error),
}

impl CliError {
    pub fn input(path: &str, message: impl Into<String>) -> Self {
        CliError::Input {
            path: path.to_string(),
            message: message.into(),
        }
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Input { .. } => 2,
            CliError::Domain(e) if e.is_domain() => 1,
            CliError::Domain(_) => 2,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Input { path, message } => write!(f, "{path}: {message}"),
            CliError::Domain(e) => write!(f, "{e}"),
        }
    }
}

impl From<leafalg::Error> for CliError {
    fn from(e: leafalg::Error) -> Self {
        CliError::Domain(e)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OrderArg {
    Wgrevlex,
    Lex,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FamilyArg {
    Hamiltonian,
    Derivations,
}

#[derive(Debug, Parser)]
#[command(name = "leafalg", version, about = "Invariants of varieties with Lie algebras of vector fields")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// JSON input document
    #[arg(short, long, global = true)]
    pub input: Option<String>,

    /// Degree bound for truncated computations (margin for verify-hp0)
    #[arg(long, global = true, allow_negative_numbers = true)]
    pub max_degree: Option<i64>,

    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,

    /// Monomial order for gb and member
    #[arg(long, global = true, value_enum, default_value_t = OrderArg::Wgrevlex)]
    pub order: OrderArg,

    /// Closure depth for vector-field structures: brackets of up to depth+1 generators
    #[arg(long, global = true, default_value_t = 2)]
    pub bracket_depth: usize,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Reduced Gröbner basis of the ideal
    Gb,
    /// Ideal membership of a polynomial
    Member {
        #[arg(short, long)]
        poly: String,
    },
    /// Milnor number at the origin
    Milnor,
    /// Milnor and Tjurina numbers, gap and singularity-ring series
    Tjurina,
    /// μ − τ
    Gap,
    /// Poincaré polynomial of the coinvariants (closed form)
    Hp0,
    /// Truncated coinvariant dimensions by linear algebra
    Coinv {
        #[arg(long, value_enum, default_value_t = FamilyArg::Hamiltonian)]
        family: FamilyArg,
    },
    /// Compare the closed form with the truncated computation
    VerifyHp0,
    /// Rank stratification X_{<=i}
    Strata,
    /// Leaves criterion dim X_{<=i} <= i
    Leaves,
    /// Singular locus plus zeros of the top polyvector field
    Degenerate,
    /// Bracket {f, g}, or the whole bracket matrix
    Bracket {
        #[arg(short)]
        f: Option<String>,
        #[arg(short)]
        g: Option<String>,
    },
    /// Hamiltonian vector field of a function
    Hamvec {
        #[arg(short)]
        f: String,
    },
    /// Generators of the Hamiltonian family up to --max-degree
    Hamgen,
    /// Tangent vector fields up to --max-degree
    Derivations,
    /// Ideal of the locus where all vector fields vanish
    Exceptional,
    /// Truncated incompressibility test for the structure's fields
    Incompressible,
    /// Symmetric-power generating series
    Sympower {
        /// Poincaré polynomial in u (default: hp0 of the input)
        #[arg(long)]
        poly: Option<String>,
        /// Weight of the defining equation (default: from the input)
        #[arg(short, long)]
        degree: Option<i64>,
        #[arg(long, default_value_t = 4)]
        n_max: u32,
    },
    /// Coinvariants of Sym^2 by direct linear algebra
    Sym2Brute {
        #[arg(long, default_value_t = 20_000)]
        guard: usize,
    },
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Gb => "gb",
            Command::Member { .. } => "member",
            Command::Milnor => "milnor",
            Command::Tjurina => "tjurina",
            Command::Gap => "gap",
            Command::Hp0 => "hp0",
            Command::Coinv { .. } => "coinv",
            Command::VerifyHp0 => "verify-hp0",
            Command::Strata => "strata",
            Command::Leaves => "leaves",
            Command::Degenerate => "degenerate",
            Command::Bracket { .. } => "bracket",
            Command::Hamvec { .. } => "hamvec",
            Command::Hamgen => "hamgen",
            Command::Derivations => "derivations",
            Command::Exceptional => "exceptional",
            Command::Incompressible => "incompressible",
            Command::Sympower { .. } => "sympower",
            Command::Sym2Brute { .. } => "sym2-brute",
        }
    }
}

/// Text and JSON renderings of a command's result.
#[derive(Debug, Clone)]
pub struct Report {
    pub text: String,
    pub result: Value,
}

/// Exit code and captured output of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Runs a parsed command against an optional input document.
pub fn execute(cli: &Cli, doc: Option<&InputDocument>) -> Result<Report, CliError> {
    commands::dispatch(cli, doc)
}

/// The JSON report object.
pub fn json_report(command: &str, doc: Option<&InputDocument>, report: &Report) -> Value {
    json!({
        "command": command,
        "input": doc.map(InputDocument::to_json).unwrap_or(Value::Null),
        "result": report.result,
        "warnings": doc.map(|d| d.warnings.clone()).unwrap_or_default(),
    })
}

pub fn render_json(value: &Value) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("values serialize");
    s.push('\n');
    s
}

/// Parses arguments and runs; never exits the process.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let rendered = e.render().to_string();
            return if code == 0 {
                Outcome { code, stdout: rendered, stderr: String::new() }
            } else {
                Outcome { code, stdout: String::new(), stderr: rendered }
            };
        }
    };
    let doc = match &cli.input {
        Some(path) => match load_input(path) {
            Ok(doc) => Some(doc),
            Err(e) => return failure(&e),
        },
        None => None,
    };
    match execute(&cli, doc.as_ref()) {
        Ok(report) => {
            let warnings = doc.as_ref().map(|d| d.warnings.clone()).unwrap_or_default();
            match cli.format {
                Format::Text => {
                    let mut stdout = report.text.clone();
                    if !stdout.ends_with('\n') {
                        stdout.push('\n');
                    }
                    let stderr = warnings.iter().map(|w| format!("warning: {w}\n")).collect();
                    Outcome { code: 0, stdout, stderr }
                }
                Format::Json => Outcome {
                    code: 0,
                    stdout: render_json(&json_report(cli.command.name(), doc.as_ref(), &report)),
                    stderr: String::new(),
                },
            }
        }
        Err(e) => failure(&e),
    }
}

fn failure(e: &CliError) -> Outcome {
    Outcome {
        code: e.exit_code(),
        stdout: String::new(),
        stderr: format!("error: {e}\n"),
    }
}
