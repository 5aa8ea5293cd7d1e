mod commands;
mod report;

use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use pvi_core::picardfuchs::Variant;
use pvi_core::tables::load_tables;

use report::{Report, Timing};

#[derive(Parser)]
#[command(name = "pvi", version, about = "Exact checks of algebraic solutions shared by families of Painleve VI equations")]
struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    /// Record per-item wall time (makes output run-dependent).
    #[arg(long, global = true)]
    timing: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum System {
    Pf1,
    Pf2,
}

#[derive(Subcommand)]
enum Command {
    /// Audit every Table 1 row against the residue oracle.
    VerifyTable1,
    /// Reproduce the Table 3 partitions on seeded samples of each face.
    VerifyTable3 {
        #[arg(long, default_value_t = 5)]
        seeds: u64,
    },
    /// Check that Table 4 and 5 points span the audited Table 1 subspaces.
    VerifySpan,
    /// Run the Picard-Fuchs grid, its S4 orbit and the stabilizer columns.
    VerifyGrid,
    /// Verify the factorization identities quoted on faces of W.
    VerifyFaces,
    /// Run one Picard-Fuchs derivation for a Table 6 row.
    DerivePf {
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..=5))]
        row: u32,
        #[arg(long, value_enum)]
        system: System,
    },
    /// The S4 orbit and stabilizer of a Table 1 curve.
    S4 {
        #[arg(long, value_name = "KEY")]
        orbit: String,
    },
    /// Discriminant test of the curve N_beta for beta = b0,b1,b2,b3.
    Belyi {
        #[arg(long, value_name = "B0,B1,B2,B3", allow_hyphen_values = true)]
        beta: String,
    },
    /// Parameter-level check of the Okamoto transformation relating 1A and 2A.
    OkamotoCheck,
    /// Everything above except the single-item commands.
    All {
        #[arg(long, default_value_t = 5)]
        seeds: u64,
    },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::VerifyTable1 => "verify-table1",
            Command::VerifyTable3 { .. } => "verify-table3",
            Command::VerifySpan => "verify-span",
            Command::VerifyGrid => "verify-grid",
            Command::VerifyFaces => "verify-faces",
            Command::DerivePf { .. } => "derive-pf",
            Command::S4 { .. } => "s4",
            Command::Belyi { .. } => "belyi",
            Command::OkamotoCheck => "okamoto-check",
            Command::All { .. } => "all",
        }
    }
}

fn usage_error(msg: &str) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(2)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let ds = match load_tables() {
        Ok(ds) => ds,
        Err(e) => {
            eprintln!("error: embedded tables: {e}");
            return ExitCode::from(1);
        }
    };
    let result = match &cli.command {
        Command::VerifyTable1 => commands::verify_table1(&ds),
        Command::VerifyTable3 { seeds } => commands::verify_table3(&ds, *seeds),
        Command::VerifySpan => commands::verify_span(&ds),
        Command::VerifyGrid => commands::verify_grid(&ds),
        Command::VerifyFaces => commands::verify_faces(),
        Command::DerivePf { row, system } => {
            let v = match system {
                System::Pf1 => Variant::Pf1,
                System::Pf2 => Variant::Pf2,
            };
            commands::derive_pf(&ds, *row, v)
        }
        Command::S4 { orbit } => {
            if ds.row(orbit).is_err() {
                return usage_error(&format!("unknown Table 1 key {orbit:?}"));
            }
            commands::s4_orbit(&ds, orbit)
        }
        Command::Belyi { beta } => match commands::parse_beta(beta) {
            Ok(b) => commands::belyi(&b),
            Err(msg) => return usage_error(&msg),
        },
        Command::OkamotoCheck => commands::okamoto(&ds),
        Command::All { seeds } => commands::all(&ds, *seeds),
    };
    let timed = match result {
        Ok(x) => x,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    };
    let timing = cli.timing.then(|| {
        timed.iter().map(|(it, ms)| Timing { kind: it.kind.clone(), key: it.key.clone(), millis: *ms }).collect()
    });
    let report = Report::new(cli.command.name(), timed.into_iter().map(|(it, _)| it).collect(), timing);
    match cli.format {
        Format::Text => print!("{}", report.to_text()),
        Format::Json => println!("{}", serde_json::to_string_pretty(&report).expect("report serializes")),
    }
    if report.summary.corrected > 0 {
        eprintln!("warning: {} CORRECTED verdicts", report.summary.corrected);
    }
    ExitCode::from(report.exit_code() as u8)
}
