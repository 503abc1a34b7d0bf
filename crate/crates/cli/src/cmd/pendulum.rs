use std::fs;
use std::path::PathBuf;

use anyhow::Context;
use monodromy_core::pendulum::{self, CircuitSpec, PendulumError, PendulumPoint};

use crate::config::{parse_epsilon, parse_pair, parse_samples, parse_turns, Failure, Format};
use crate::output;
use crate::report::{trace_csv, CertificateReport};

#[derive(clap::Args, Debug)]
pub struct Args {
    /// Circuit radius in the (j, h) plane.
    #[arg(long, default_value = "0.05", value_parser = parse_epsilon)]
    pub epsilon: f64,
    /// Samples per turn before refinement (power of two, at least 256).
    #[arg(long, default_value = "2048", value_parser = parse_samples)]
    pub samples: usize,
    /// Circuit centre J,H.
    #[arg(long, default_value = "0,1", value_parser = parse_pair, allow_hyphen_values = true)]
    pub center: (f64, f64),
    /// Number of turns; negative runs clockwise.
    #[arg(long, default_value = "1", value_parser = parse_turns, allow_hyphen_values = true)]
    pub turns: i32,
    /// What goes to stdout when `--out` is absent: the trace table or the certificate report.
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    /// Directory receiving `trace.csv` and `certificate.json`.
    #[arg(long, value_name = "DIR")]
    pub out: Option<PathBuf>,
}

fn classify(e: PendulumError) -> Failure {
    match e {
        PendulumError::DegeneratePoint { .. }
        | PendulumError::OutsideRegion { .. }
        | PendulumError::Epsilon(..)
        | PendulumError::TooFewSamples(..)
        | PendulumError::ZeroTurns => Failure::Usage(e.into()),
        _ => Failure::Check(e.into()),
    }
}

pub fn run(args: Args) -> Result<(), Failure> {
    let spec = CircuitSpec {
        center: PendulumPoint::new(args.center.0, args.center.1),
        epsilon: args.epsilon,
        samples: args.samples,
        turns: args.turns,
    };
    let trace = pendulum::trace(spec).map_err(classify)?;
    let certificate = pendulum::certify(&trace).map_err(classify)?;
    let report = CertificateReport::new(&trace, certificate);

    let csv = trace_csv(&trace);
    let json = output::json(&report)?;

    match &args.out {
        Some(dir) => {
            fs::create_dir_all(dir)
                .with_context(|| format!("creating {}", dir.display()))
                .map_err(Failure::Check)?;
            output::write_atomic(&dir.join("trace.csv"), &csv)?;
            output::write_atomic(&dir.join("certificate.json"), &json)?;
            let c = &report.certificate;
            eprintln!(
                "delta_theta_hat = {:+.6}, m = {}, gate = {}; wrote {}",
                c.delta_theta_hat,
                c.m,
                c.gate,
                dir.display()
            );
            Ok(())
        }
        None => output::emit(
            None,
            match args.format {
                Format::Csv => &csv,
                Format::Json => &json,
            },
        ),
    }
}
