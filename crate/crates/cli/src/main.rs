//! monodromy-lab: identity checks, curve and theta queries, braid tracking
//! and the spherical-pendulum monodromy certificate.
//!
//! Exit codes: 0 success, 1 failed check or certification, 2 usage error.

mod cmd;
mod config;
mod loopfile;
mod output;
mod report;

use std::process::ExitCode;

use clap::{Parser, Subcommand};

use config::{Failure, THREADS_ENV};

#[derive(Parser, Debug)]
#[command(
    name = "monodromy-lab",
    version,
    about = "Theta functions, elliptic curves and Hamiltonian monodromy"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Run the identity suites and report each residual against its tolerance.
    Verify(cmd::verify::Args),
    /// Trace the pendulum circuit and certify the monodromy.
    Pendulum(cmd::pendulum::Args),
    /// Track the roots of a cubic family along a loop file.
    Braid(cmd::braid::Args),
    /// Print the phase gate and SL(2,Z) images for a net translation m.
    Gate(cmd::gate::Args),
    /// Roots, periods, tau and modulus of a Weierstrass curve.
    Curve(cmd::curve::Args),
    /// Evaluate theta functions at (z, tau).
    Theta(cmd::theta::Args),
}

fn init_threads() -> Result<(), Failure> {
    let Ok(raw) = std::env::var(THREADS_ENV) else {
        return Ok(());
    };
    let n: usize = raw
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| Failure::usage(format!("{THREADS_ENV} must be a positive integer, got {raw:?}")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| Failure::Check(e.into()))
}

fn run(cli: Cli) -> Result<(), Failure> {
    init_threads()?;
    match cli.command {
        Command::Verify(a) => cmd::verify::run(a),
        Command::Pendulum(a) => cmd::pendulum::run(a),
        Command::Braid(a) => cmd::braid::run(a),
        Command::Gate(a) => cmd::gate::run(a),
        Command::Curve(a) => cmd::curve::run(a),
        Command::Theta(a) => cmd::theta::run(a),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        // clap exits 2 on usage errors and 0 for --help / --version.
        Err(e) => e.exit(),
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {:#}", f.error());
            ExitCode::from(f.code())
        }
    }
}
