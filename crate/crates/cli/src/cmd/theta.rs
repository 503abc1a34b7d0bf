use monodromy_core::thetafn::{self, ThetaError, K_MAX};
use num_complex::Complex64;
use serde::Serialize;

use crate::cmd::{fmt_c, modular};
use crate::config::{parse_complex, Failure, Format};
use crate::output;

#[derive(clap::Args, Debug)]
pub struct Args {
    /// RE or RE,IM.
    #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
    pub z: Complex64,
    /// RE,IM with IM > 0.
    #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
    pub tau: Complex64,
    /// Level k of the level-k family (requires --j).
    #[arg(long, requires = "j")]
    pub k: Option<u32>,
    /// Index j in 0..k.
    #[arg(long, requires = "k")]
    pub j: Option<u32>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
}

#[derive(Serialize)]
struct ThetaReport {
    schema: u32,
    values: Vec<(String, [f64; 2])>,
}

fn usage(e: ThetaError) -> Failure {
    Failure::Usage(e.into())
}

pub fn run(args: Args) -> Result<(), Failure> {
    let tau = modular(args.tau)?;
    let z = args.z;
    let mut values: Vec<(String, Complex64)> = vec![
        ("theta".into(), thetafn::theta(z, tau).map_err(usage)?),
        ("theta1".into(), thetafn::theta1(z, tau).map_err(usage)?),
        ("theta2".into(), thetafn::theta2(z, tau).map_err(usage)?),
        ("theta3".into(), thetafn::theta3(z, tau).map_err(usage)?),
        ("theta4".into(), thetafn::theta4(z, tau).map_err(usage)?),
    ];
    if let (Some(k), Some(j)) = (args.k, args.j) {
        if k == 0 || k > K_MAX || j >= k {
            return Err(Failure::usage(format!(
                "need 1 <= k <= {K_MAX} and 0 <= j < k, got k = {k}, j = {j}"
            )));
        }
        values.push((
            format!("level_theta[{k},{j}]"),
            thetafn::level_theta(k, j, z, tau).map_err(usage)?,
        ));
        values.push((
            format!("modified_level_theta[{k},{j}]"),
            thetafn::modified_level_theta(k, j, z, tau).map_err(usage)?,
        ));
    }
    let out = match args.format {
        Format::Csv => values.iter().map(|(n, v)| format!("{n}: {}\n", fmt_c(*v))).collect(),
        Format::Json => output::json(&ThetaReport {
            schema: crate::report::SCHEMA_VERSION,
            values: values.into_iter().map(|(n, v)| (n, [v.re, v.im])).collect(),
        })?,
    };
    output::emit(None, &out)
}
