use std::fs;
use std::path::PathBuf;

use monodromy_core::monodromy::{phase_gate, quantum_dual, verify_gate_against_theta, MAX_GATE_CHECK};
use monodromy_core::UnimodularMatrix;
use num_complex::Complex64;
use serde::Serialize;

use crate::cmd::modular;
use crate::config::{parse_complex, Failure, Format};
use crate::output;
use crate::report::CertificateReport;

#[derive(clap::Args, Debug)]
#[command(group(clap::ArgGroup::new("source").required(true).args(["m", "certificate"])))]
pub struct Args {
    /// Net translation count.
    #[arg(long, allow_hyphen_values = true)]
    pub m: Option<i64>,
    /// Certificate report written by `pendulum`; its m is used.
    #[arg(long, value_name = "PATH")]
    pub certificate: Option<PathBuf>,
    /// Sample point z for the theta check (RE or RE,IM).
    #[arg(long, default_value = "0.1", value_parser = parse_complex, allow_hyphen_values = true)]
    pub z: Complex64,
    /// Sample tau for the theta check (RE,IM with IM > 0).
    #[arg(long, default_value = "0,1", value_parser = parse_complex, allow_hyphen_values = true)]
    pub tau: Complex64,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
}

#[derive(Serialize)]
struct GateReport {
    schema: u32,
    m: i64,
    gate: String,
    quarter_turns: u8,
    classical_matrix: UnimodularMatrix,
    quantum_matrix: UnimodularMatrix,
    /// Absent when |m| exceeds the range checked against theta.
    theta_residual: Option<f64>,
}

fn read_m(path: &PathBuf) -> Result<i64, Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))?;
    let report: CertificateReport = serde_json::from_str(&text)
        .map_err(|e| Failure::usage(format!("{}: not a certificate report: {e}", path.display())))?;
    if report.schema != crate::report::SCHEMA_VERSION {
        return Err(Failure::usage(format!(
            "{}: unsupported schema {}",
            path.display(),
            report.schema
        )));
    }
    Ok(report.certificate.m)
}

pub fn run(args: Args) -> Result<(), Failure> {
    let m = match (&args.certificate, args.m) {
        (Some(p), _) => read_m(p)?,
        (None, Some(m)) => m,
        (None, None) => return Err(Failure::usage("supply --m or --certificate")),
    };
    if m.unsigned_abs() > i32::MAX as u64 {
        return Err(Failure::usage(format!("m = {m} out of range")));
    }
    let tau = modular(args.tau)?;
    let gate = phase_gate(m);
    let classical = UnimodularMatrix::B2.pow(m);
    let quantum = quantum_dual(&classical);
    let residual = if m.abs() <= MAX_GATE_CHECK {
        Some(verify_gate_against_theta(m, args.z, tau).map_err(|e| Failure::Check(e.into()))?)
    } else {
        None
    };

    let out = match args.format {
        Format::Csv => {
            let r = residual.map_or_else(|| "null".to_string(), |r| format!("{r:.3e}"));
            format!(
                "m: {m}\ngate: {gate}\nclassical (b2^m): {classical}\nquantum (b1^m): {quantum}\ntheta_residual: {r}\n"
            )
        }
        Format::Json => output::json(&GateReport {
            schema: crate::report::SCHEMA_VERSION,
            m,
            gate: gate.to_string(),
            quarter_turns: gate.quarter_turns(),
            classical_matrix: classical,
            quantum_matrix: quantum,
            theta_residual: residual,
        })?,
    };
    output::emit(None, &out)
}
