//! `tcat`: command-line front end for T-categories over finite sets.
//!
//! Exit codes: 0 when every check passes, 1 when a check fails, 2 for unreadable or invalid
//! documents, 3 when the monad cannot support the requested construction.

mod commands;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use tcat_core::document::{canonical, parse_document, Workspace};
use tcat_core::error::Error;

use report::Report;

#[derive(Parser)]
#[command(name = "tcat", version, about = "Nerves, homs, 2-cells, the comonad K and powers for T-categories over finite sets")]
struct Cli {
    /// Truncation depth; overrides the document's depth.
    #[arg(long, global = true)]
    depth: Option<usize>,
    /// Emit the report as JSON.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Composition and unit axioms, the ladder classification and the nerve's identities.
    Validate { file: PathBuf },
    /// Level sizes of the nerve and its simplicial identities.
    Nerve { file: PathBuf },
    /// The Segal condition at every level of the nerve.
    Segal { file: PathBuf },
    /// Hom simplices from the first nerve to the second, and Segal at degree 0.
    Hom { source: PathBuf, target: PathBuf },
    /// T-natural transformations between T-functors, with the α ↔ α̂ roundtrip.
    TwoCells { source: PathBuf, target: PathBuf },
    /// Composition of hom 1-simplices against the search oracle, units and associativity.
    Compose { source: PathBuf, target: PathBuf },
    /// The power Δ[1]⋔X with closure, the hexagon oracle and the universal property.
    PowerDelta1 { file: PathBuf },
    /// The copowers Δ[1]·Y and Δ[0]·Y.
    Copower { file: PathBuf },
    /// Comonad laws of K̂ and the coalgebra roundtrip.
    Comonad { file: PathBuf },
    /// Cardinality tables.
    Counts { file: PathBuf },
    /// Prints the canonical form of a document.
    Canonical { file: PathBuf },
}

const DEFAULT_DEPTH: usize = 4;

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Parse(_) => 2,
        Error::Capability(_) | Error::Infinite(_) => 3,
        _ => 1,
    }
}

fn load(path: &PathBuf) -> Result<Workspace, Error> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    parse_document(&text).map_err(|e| match e {
        Error::Parse(m) => Error::Parse(format!("{}: {m}", path.display())),
        other => other,
    })
}

fn run(cli: &Cli) -> Result<Option<Report>, Error> {
    let files: Vec<&PathBuf> = match &cli.command {
        Command::Validate { file }
        | Command::Nerve { file }
        | Command::Segal { file }
        | Command::PowerDelta1 { file }
        | Command::Copower { file }
        | Command::Comonad { file }
        | Command::Counts { file }
        | Command::Canonical { file } => vec![file],
        Command::Hom { source, target } | Command::TwoCells { source, target } | Command::Compose { source, target } => vec![source, target],
    };
    if let Command::Canonical { file } = &cli.command {
        let text = std::fs::read_to_string(file).map_err(|e| Error::Parse(format!("{}: {e}", file.display())))?;
        print!("{}", canonical(&text)?);
        return Ok(None);
    }
    let ws: Vec<Workspace> = files.iter().map(|f| load(f)).collect::<Result<_, _>>()?;
    let depth = cli.depth.or(ws[0].depth).unwrap_or(DEFAULT_DEPTH);
    let names: Vec<String> = files.iter().map(|f| f.display().to_string()).collect();
    let (name, run): (&str, fn(&[Workspace], usize, &mut Report) -> Result<(), Error>) = match cli.command {
        Command::Validate { .. } => ("validate", |w, d, r| commands::validate(&w[0], d, r)),
        Command::Nerve { .. } => ("nerve", |w, d, r| commands::nerve_cmd(&w[0], d, r)),
        Command::Segal { .. } => ("segal", |w, d, r| commands::segal(&w[0], d, r)),
        Command::Hom { .. } => ("hom", |w, d, r| commands::hom(&w[0], &w[1], d, r)),
        Command::TwoCells { .. } => ("two-cells", |w, d, r| commands::two_cells(&w[0], &w[1], d, r)),
        Command::Compose { .. } => ("compose", |w, d, r| commands::compose(&w[0], &w[1], d, r)),
        Command::PowerDelta1 { .. } => ("power-delta1", |w, d, r| commands::power_delta1(&w[0], d, r)),
        Command::Copower { .. } => ("copower", |w, d, r| commands::copower_cmd(&w[0], d, r)),
        Command::Comonad { .. } => ("comonad", |w, d, r| commands::comonad(&w[0], d, r)),
        Command::Counts { .. } => ("counts", |w, d, r| commands::counts(&w[0], d, r)),
        Command::Canonical { .. } => unreachable!("handled above"),
    };
    let mut report = Report::new(name, depth, &names);
    run(&ws, depth, &mut report)?;
    Ok(Some(report))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(None) => ExitCode::SUCCESS,
        Ok(Some(report)) => {
            print!("{}", if cli.json { report.to_json() } else { report.to_text() });
            if report.passed() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
