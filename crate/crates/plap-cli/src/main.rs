//! plap: nonlinear spectral analysis of the graph p-Laplacian.
//!
//! Subcommands wire the library modules together; every command prints a
//! single `report.v1` JSON document on stdout. Exit codes: 0 success,
//! 2 input/parse errors, 3 numerical non-convergence, 4 search cap exceeded.

mod commands;
mod report;

use clap::{Parser, Subcommand};

#[derive(Parser)]
#[command(name = "plap", version, about = "graph p-Laplacian spectral toolkit")]
struct Cli {
    /// Size of the worker pool for restarts and searches (output-invariant).
    #[arg(long, global = true)]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Estimate the spectrum: flows for finite p, certified construction for p in {1, inf}.
    Spectrum(commands::SpectrumArgs),
    /// Verify a candidate eigenpair with a selectable certification strategy.
    Verify(commands::VerifyArgs),
    /// Exact combinatorial invariants (Cheeger, packing, independence, ...).
    Geometry(commands::GeometryArgs),
    /// Nodal-domain analytics of a node function.
    Nodal(commands::NodalArgs),
    /// Node-to-edge duality transform of an eigenpair.
    Dual(commands::DualArgs),
    /// Continuation scan over p with normalized monotone sequences.
    Scan(commands::ScanArgs),
    /// Spectral minimal partitions of the infinity Laplacian.
    Partition(commands::PartitionArgs),
}

fn main() {
    let cli = Cli::parse();
    if let Some(threads) = cli.threads {
        // The merge steps are order-deterministic, so the pool size only
        // affects wall-clock time.
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global();
    }
    let outcome = match cli.command {
        Command::Spectrum(args) => commands::cmd_spectrum(args),
        Command::Verify(args) => commands::cmd_verify(args),
        Command::Geometry(args) => commands::cmd_geometry(args),
        Command::Nodal(args) => commands::cmd_nodal(args),
        Command::Dual(args) => commands::cmd_dual(args),
        Command::Scan(args) => commands::cmd_scan(args),
        Command::Partition(args) => commands::cmd_partition(args),
    };
    match outcome {
        Ok(value) => report::print_report(value),
        Err(err) => {
            eprintln!("error: {}", err.message);
            std::process::exit(err.exit_code);
        }
    }
}
