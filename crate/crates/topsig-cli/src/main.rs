//! Command-line front end: build complexes and hypergraphs, run the
//! spectral / Hodge / flow / network / tensor operations on files, and emit
//! plots. Every command prints a deterministic one-line JSON summary with
//! the seed and the SHA-256 of each input; data outputs go to --out.
//!
//! Exit codes: 0 success, 1 bad input or usage, 2 numerical failure.

mod commands;
mod context;

use std::path::PathBuf;

use clap::{Parser, Subcommand};

use context::{Context, OutputFormat};

#[derive(Parser)]
#[command(name = "topsig", version, about = "Signal processing on simplicial complexes and hypergraphs")]
struct Cli {
    /// Seed for every randomized routine (recorded in the summary).
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    /// Primary output file of the command.
    #[arg(short, long, global = true)]
    out: Option<PathBuf>,

    /// Encoding for vector outputs.
    #[arg(long, global = true, value_enum, default_value = "csv")]
    format: OutputFormat,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build, validate, and triangulate simplicial complexes.
    #[command(subcommand)]
    Complex(commands::complex::Cmd),
    /// Eigenbases, transforms, filters, and eigenmaps.
    #[command(subcommand)]
    Spectral(commands::spectral::Cmd),
    /// Hodge Laplacians, decompositions, and harmonic bases.
    #[command(subcommand)]
    Hodge(commands::hodge::Cmd),
    /// Edge-flow denoising, interpolation, and divergence.
    #[command(subcommand)]
    Flow(commands::flow::Cmd),
    /// Trajectory flows and harmonic embeddings.
    #[command(subcommand)]
    Traj(commands::traj::Cmd),
    /// Simplicial network forward passes and equivariance checks.
    #[command(subcommand)]
    Snn(commands::snn::Cmd),
    /// Hypergraph expansions, tensors, transforms, and regularized fits.
    #[command(subcommand)]
    Hg(commands::hg::Cmd),
    /// Render data series to a standalone SVG.
    Plot(commands::plot::Args),
}

fn main() {
    std::process::exit(real_main());
}

fn real_main() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            return code;
        }
    };
    let mut ctx = Context::new(cli.seed, cli.out, cli.format);
    let outcome = match cli.command {
        Command::Complex(cmd) => commands::complex::run(&mut ctx, cmd),
        Command::Spectral(cmd) => commands::spectral::run(&mut ctx, cmd),
        Command::Hodge(cmd) => commands::hodge::run(&mut ctx, cmd),
        Command::Flow(cmd) => commands::flow::run(&mut ctx, cmd),
        Command::Traj(cmd) => commands::traj::run(&mut ctx, cmd),
        Command::Snn(cmd) => commands::snn::run(&mut ctx, cmd),
        Command::Hg(cmd) => commands::hg::run(&mut ctx, cmd),
        Command::Plot(args) => commands::plot::run(&mut ctx, args),
    };
    match outcome {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            if e.is_numerical() {
                2
            } else {
                1
            }
        }
    }
}
