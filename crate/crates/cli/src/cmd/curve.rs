use monodromy_core::weierstrass::{theta_root_residuals, translation_swap_residual, CurveData, CurveError};
use num_complex::Complex64;
use serde::Serialize;

use crate::config::{Failure, Format};
use crate::output;

#[derive(clap::Args, Debug)]
pub struct Args {
    #[arg(long, allow_hyphen_values = true)]
    pub g2: f64,
    #[arg(long, allow_hyphen_values = true)]
    pub g3: f64,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
}

#[derive(Serialize)]
struct CurveReport {
    schema: u32,
    g2: f64,
    g3: f64,
    roots: [f64; 3],
    omega: f64,
    omega_prime: [f64; 2],
    tau: [f64; 2],
    k_sq: f64,
    bridge_residual: f64,
    swap_residual: f64,
}

fn domain(e: CurveError) -> Failure {
    match e {
        CurveError::Degenerate(_) | CurveError::Unsupported(_) | CurveError::Domain(_) | CurveError::NotCubic => {
            Failure::Usage(e.into())
        }
        _ => Failure::Check(e.into()),
    }
}

pub fn run(args: Args) -> Result<(), Failure> {
    if !(args.g2.is_finite() && args.g3.is_finite()) {
        return Err(Failure::usage("g2 and g3 must be finite"));
    }
    let c = CurveData::from_invariants(args.g2, args.g3).map_err(domain)?;
    let bridge = theta_root_residuals(&c).map_err(domain)?.max();
    let swap = translation_swap_residual(&c).map_err(domain)?;
    let pair = |z: Complex64| [z.re, z.im];
    let report = CurveReport {
        schema: crate::report::SCHEMA_VERSION,
        g2: c.g2(),
        g3: c.g3(),
        roots: c.roots(),
        omega: c.omega(),
        omega_prime: pair(c.omega_prime()),
        tau: pair(c.tau().value()),
        k_sq: c.k_sq(),
        bridge_residual: bridge,
        swap_residual: swap,
    };
    let out = match args.format {
        Format::Csv => {
            let [e1, e2, e3] = report.roots;
            format!(
                "roots: {e1:.16e}, {e2:.16e}, {e3:.16e}\nomega: {:.16e}\nomega_prime: {}\ntau: {}\nk^2: {:.16e}\nbridge_residual: {bridge:.3e}\nswap_residual: {swap:.3e}\n",
                report.omega,
                super::fmt_c(c.omega_prime()),
                super::fmt_c(c.tau().value()),
                report.k_sq,
            )
        }
        Format::Json => output::json(&report)?,
    };
    output::emit(None, &out)
}
