use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use flatalg_cli::commands::{self, Outcome};

/// Batch verification and construction tool for graded algebras with exact
/// rational arithmetic.
#[derive(Parser)]
#[command(name = "flatalg", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Also write the output document to this path.
    #[arg(long, global = true)]
    emit: Option<PathBuf>,

    /// Emit JSON (the default and only format; accepted for compatibility).
    #[arg(long, global = true)]
    json: bool,

    /// Treat positional inputs as names of embedded fixtures.
    #[arg(long, global = true)]
    fixtures: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum ExtendKindArg {
    Central,
    Semidirect,
    TStar,
    PiTStar,
    DoubleEven,
    DoubleOdd,
}

impl From<ExtendKindArg> for commands::ExtendKind {
    fn from(k: ExtendKindArg) -> Self {
        match k {
            ExtendKindArg::Central => commands::ExtendKind::Central,
            ExtendKindArg::Semidirect => commands::ExtendKind::Semidirect,
            ExtendKindArg::TStar => commands::ExtendKind::TStar,
            ExtendKindArg::PiTStar => commands::ExtendKind::PiTStar,
            ExtendKindArg::DoubleEven => commands::ExtendKind::DoubleEven,
            ExtendKindArg::DoubleOdd => commands::ExtendKind::DoubleOdd,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Parse and validate an algebra document.
    Validate { path: String },
    /// Run every identity check plus form invariance.
    Classify { path: String },
    /// Solve for the Levi-Civita product pair.
    LeviCivita { path: String },
    /// Compute the curvature tensors and list the nonzero entries.
    Curvature { path: String },
    /// Decide flatness (exit 0 flat, 1 not flat).
    Flat { path: String },
    /// Check the quadratic flatness equivalences on one instance.
    QuadraticReport { path: String },
    /// Build an extension of the input algebra.
    Extend {
        kind: ExtendKindArg,
        path: String,
        /// Construction data document.
        #[arg(long)]
        data: Option<PathBuf>,
    },
    /// Split off one double extension (flat non-Lie inputs).
    Deconstruct { path: String },
    /// Deconstruct repeatedly until the core is a Lie superalgebra.
    IterateToLie { path: String },
    /// Check candidate (star, circ) tables against torsion/compatibility.
    VerifyPair {
        path: String,
        #[arg(long)]
        pair: PathBuf,
    },
    /// Check a supplied isometric isomorphism between two algebras.
    VerifyIso {
        path_a: String,
        path_b: String,
        /// Map document listing the images of the first basis.
        #[arg(long)]
        data: PathBuf,
    },
}

fn run(cli: &Cli) -> Result<Outcome, commands::CliError> {
    let fx = cli.fixtures;
    match &cli.command {
        Command::Validate { path } if fx && path == "list" => Ok(commands::fixture_list()),
        Command::Validate { path } => commands::cmd_validate(path, fx),
        Command::Classify { path } => commands::cmd_classify(path, fx),
        Command::LeviCivita { path } => commands::cmd_levi_civita(path, fx),
        Command::Curvature { path } => commands::cmd_curvature(path, fx),
        Command::Flat { path } => commands::cmd_flat(path, fx),
        Command::QuadraticReport { path } => commands::cmd_quadratic_report(path, fx),
        Command::Extend { kind, path, data } => {
            commands::cmd_extend((*kind).into(), path, fx, data.as_deref())
        }
        Command::Deconstruct { path } => commands::cmd_deconstruct(path, fx),
        Command::IterateToLie { path } => commands::cmd_iterate_to_lie(path, fx),
        Command::VerifyPair { path, pair } => commands::cmd_verify_pair(path, fx, pair),
        Command::VerifyIso {
            path_a,
            path_b,
            data,
        } => commands::cmd_verify_iso(path_a, path_b, fx, data),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(outcome) => {
            let text = serde_json::to_string_pretty(&outcome.json).expect("serialisable");
            println!("{text}");
            if let Some(path) = &cli.emit {
                if let Err(e) = std::fs::write(path, format!("{text}\n")) {
                    eprintln!("error: cannot write {}: {e}", path.display());
                    return ExitCode::from(2);
                }
            }
            ExitCode::from(u8::try_from(outcome.exit).unwrap_or(2))
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
