mod commands;
mod input;
mod reproduce;

use std::fmt;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use constella::{Caps, Error};
use serde_json::json;

#[derive(Parser)]
#[command(name = "constella", version, about = "Finite monoids, constellations and restriction semigroups")]
struct Cli {
    /// Largest family that may be enumerated
    #[arg(long, global = true, env = "CONSTELLA_MAX_SIZE", default_value_t = Caps::DEFAULT_MAX_ELEMENTS)]
    max_size: usize,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Enumerate a family, or validate a table file, and print it as JSON
    Build {
        family: Family,
        /// Ground set size, or the file for `table`
        arg: String,
        #[arg(long)]
        adjoin_zero: bool,
        /// Composition of relations (only for `rel`)
        #[arg(long, value_enum)]
        composition: Option<CompositionArg>,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Idempotents, flags, protomodality, modal action and meets
    Analyze {
        file: PathBuf,
        #[arg(long, default_value = "max-right-pre-reduced")]
        e_set: String,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Build a completion or a restriction monoid from a monoid file
    Complete {
        file: PathBuf,
        #[arg(long)]
        e_set: Option<String>,
        #[arg(long, value_enum)]
        variant: Variant,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Check a family of laws; exits 1 when one fails
    Verify {
        file: PathBuf,
        #[arg(long, value_enum)]
        laws: Laws,
        #[arg(long, default_value = "max-right-pre-reduced")]
        e_set: String,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Rerun a worked example against its expected values
    Reproduce {
        #[arg(value_enum)]
        example: reproduce::Example,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Family {
    Ttransf,
    Ptransf,
    Rel,
    Trel,
    Partition,
    LtPartition,
    Table,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CompositionArg {
    Ordinary,
    Demonic,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Variant {
    C,
    C0,
    Cd,
    Rest,
    Rest0,
    Rrest,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Laws {
    Constellation,
    LeftRestriction,
    RightRestriction,
    Modal,
    Zs,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Tsv,
    Dot,
    Text,
}

impl fmt::Display for Format {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.to_possible_value().expect("no skipped variants").get_name())
    }
}

/// Bad arguments or unreadable input; exit code 2.
#[derive(Debug)]
pub struct UsageError(pub String);

impl fmt::Display for UsageError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for UsageError {}

pub fn usage<T>(msg: impl Into<String>) -> anyhow::Result<T> {
    Err(UsageError(msg.into()).into())
}

/// What a command printed and whether its checks passed.
pub struct Outcome {
    pub text: String,
    pub pass: bool,
}

impl Outcome {
    pub fn ok(text: String) -> Self {
        Outcome { text, pass: true }
    }
}

fn run(cli: Cli) -> anyhow::Result<Outcome> {
    let caps = Caps::new(cli.max_size);
    match cli.command {
        Command::Build {
            family,
            arg,
            adjoin_zero,
            composition,
            format,
            output,
        } => commands::build(family, &arg, adjoin_zero, composition, format, &caps)
            .and_then(|o| commands::write_output(o, output.as_deref())),
        Command::Analyze { file, e_set, format } => commands::analyze(&file, &e_set, format),
        Command::Complete {
            file,
            e_set,
            variant,
            format,
            output,
        } => commands::complete(&file, e_set.as_deref(), variant, format)
            .and_then(|o| commands::write_output(o, output.as_deref())),
        Command::Verify {
            file,
            laws,
            e_set,
            format,
        } => commands::verify(&file, laws, &e_set, format),
        Command::Reproduce { example, format } => reproduce::run(example, format),
    }
}

fn exit_code(err: &anyhow::Error) -> u8 {
    if err.downcast_ref::<UsageError>().is_some() || err.downcast_ref::<std::io::Error>().is_some() {
        return 2;
    }
    match err.downcast_ref::<Error>() {
        Some(Error::TooLarge { .. }) => 3,
        Some(
            Error::Malformed(_)
            | Error::NotSquare { .. }
            | Error::OutOfRange { .. }
            | Error::Empty
            | Error::EmptyGroundSet
            | Error::UnaryLength { .. }
            | Error::SelectorInapplicable(_),
        ) => 2,
        _ => 1,
    }
}

fn witness(err: &Error) -> Option<Vec<usize>> {
    match err {
        Error::NotAssociative(x, y, z) => Some(vec![*x, *y, *z]),
        Error::LawViolated { witness, .. } => Some(witness.clone()),
        Error::NotIntegral(x, y) | Error::NotClosed(x, y) | Error::NotCongruence(x, y) => Some(vec![*x, *y]),
        Error::NotProtomodal { s, e } => Some(vec![*s, *e]),
        Error::BadIdentity(x) | Error::BadZero(x) | Error::NotIdempotent(x) => Some(vec![*x]),
        _ => None,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(out) => {
            print!("{}", out.text);
            ExitCode::from(u8::from(!out.pass))
        }
        Err(err) => {
            let code = exit_code(&err);
            if code == 1 {
                let mut report = json!({"pass": false, "error": format!("{err:#}")});
                if let Some(w) = err.downcast_ref::<Error>().and_then(witness) {
                    report["witness"] = json!(w);
                }
                println!("{}", serde_json::to_string_pretty(&report).expect("serializable"));
            }
            eprintln!("error: {err:#}");
            ExitCode::from(code)
        }
    }
}
