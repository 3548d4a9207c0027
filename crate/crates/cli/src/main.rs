//! `reljac`: stability of degree-0 sheaves on Kodaira fibers and the
//! Jacobian fibers of elliptic fibrations, from the command line.

mod commands;
mod table;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(name = "reljac", version, about, propagate_version = true)]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, global = true, default_value_t = Format::Json)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Table,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Dual graph, nodes and singularity of a fiber.
    ClassifyFiber(FiberArgs),
    /// Stability verdict for a degree-0 class.
    CheckStability(ClassArgs),
    /// Rule and oracle verdicts over every vector in a degree box.
    Enumerate(EnumerateArgs),
    /// Jordan-Hölder graded object of a semistable class.
    Graded(ClassArgs),
    /// Isomorphism type of the Jacobian fiber.
    Jacobian(JacobianArgs),
    /// Images of points of C0 under p -> [E_p].
    Phi(PhiArgs),
    /// Jacobian fibers over every point of a fibration description.
    Report(ReportArgs),
    /// Discriminant scan of a Weierstrass model.
    IngestScan(ScanArgs),
    /// Weierstrass model ingestion.
    Ingest {
        #[command(subcommand)]
        command: IngestCommand,
    },
    /// Cross-checks the rule against the oracle, across polarizations and
    /// subcurve modes.
    OracleAudit(AuditArgs),
}

#[derive(Subcommand, Debug)]
enum IngestCommand {
    /// Discriminant scan of a Weierstrass model.
    Scan(ScanArgs),
}

#[derive(Args, Debug, Clone)]
pub struct FiberArgs {
    /// Fiber shorthand (smooth, I1, I4, II, III, IV) or a fiber JSON file.
    #[arg(long)]
    pub fiber: String,
    /// Comma-separated positive component weights.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub polarization: Option<Vec<i64>>,
}

#[derive(Args, Debug, Clone)]
pub struct ClassArgs {
    #[command(flatten)]
    pub fiber: FiberArgs,
    /// Comma-separated restriction degrees, one per component.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub degrees: Vec<i64>,
    /// Treat the class as the non-locally-free sheaf at this node; degrees
    /// are then those of its pullback and total -1.
    #[arg(long, conflicts_with = "singular")]
    pub node: Option<usize>,
    /// Treat the class as the non-locally-free sheaf at the cusp, tacnode or
    /// triple point; degrees total -1.
    #[arg(long)]
    pub singular: bool,
    /// Also test disconnected destabilizing subcurves.
    #[arg(long)]
    pub disconnected: bool,
}

#[derive(Args, Debug, Clone)]
pub struct EnumerateArgs {
    #[command(flatten)]
    pub fiber: FiberArgs,
    /// Largest absolute restriction degree.
    #[arg(long, default_value_t = 1)]
    pub bound: u32,
    /// Largest number of box vectors to visit.
    #[arg(long)]
    pub cap: Option<u128>,
    /// Also test disconnected destabilizing subcurves.
    #[arg(long)]
    pub disconnected: bool,
}

#[derive(Args, Debug, Clone)]
pub struct JacobianArgs {
    #[command(flatten)]
    pub fiber: FiberArgs,
    /// Compute the classification from stratification and the boundary
    /// gluing instead of the table.
    #[arg(long)]
    pub derive: bool,
}

#[derive(Args, Debug, Clone)]
pub struct PhiArgs {
    #[command(flatten)]
    pub fiber: FiberArgs,
    /// Smooth base point, as `c<k>:<t>` with k 0-based.
    #[arg(long, default_value = "c0:1")]
    pub q: String,
    /// Comma-separated sample points on the component of q (`c<k>:<t>`,
    /// `node<k>` or `singular`).
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub samples: Vec<String>,
}

#[derive(Args, Debug, Clone)]
pub struct ReportArgs {
    /// Fibration description JSON.
    #[arg(long)]
    pub input: PathBuf,
}

#[derive(Args, Debug, Clone)]
pub struct ScanArgs {
    /// Model file, JSON or TOML (by extension).
    pub model: PathBuf,
    /// Write the fibration description here instead of standard output.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug, Clone)]
pub struct AuditArgs {
    #[command(flatten)]
    pub fiber: FiberArgs,
    /// Largest absolute restriction degree.
    #[arg(long, default_value_t = 2)]
    pub bound: u32,
    /// Number of random polarizations to compare against.
    #[arg(long, default_value_t = 100)]
    pub samples: u32,
    /// Seed for the random polarization generator.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Also compare connected-only and all-subcurve oracle verdicts.
    #[arg(long)]
    pub disconnected: bool,
    /// Largest number of box vectors to visit.
    #[arg(long)]
    pub cap: Option<u128>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::ClassifyFiber(a) => commands::classify_fiber(&a, cli.format),
        Command::CheckStability(a) => commands::check_stability(&a, cli.format),
        Command::Enumerate(a) => commands::enumerate(&a, cli.format),
        Command::Graded(a) => commands::graded(&a, cli.format),
        Command::Jacobian(a) => commands::jacobian(&a, cli.format),
        Command::Phi(a) => commands::phi(&a, cli.format),
        Command::Report(a) => commands::report(&a, cli.format),
        Command::IngestScan(a)
        | Command::Ingest {
            command: IngestCommand::Scan(a),
        } => commands::ingest_scan(&a, cli.format),
        Command::OracleAudit(a) => commands::oracle_audit(&a, cli.format),
    };
    match result {
        Ok(output) => {
            if !output.stdout.is_empty() {
                println!("{}", output.stdout);
            }
            ExitCode::from(output.code)
        }
        Err(e) => {
            eprintln!("error: {}", e.message);
            ExitCode::from(e.code)
        }
    }
}
