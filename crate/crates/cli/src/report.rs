use monodromy_core::pendulum::{CircuitTrace, MonodromyCertificate};
use serde::{Deserialize, Serialize};

pub const SCHEMA_VERSION: u32 = 1;

pub const CSV_HEADER: &str = "t,j,h,x_minus,x_plus,x_zero,theta_raw,T,theta_hat_unwrapped";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CertificateReport {
    pub schema: u32,
    pub certificate: MonodromyCertificate,
    pub provenance: Provenance,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Provenance {
    pub config: ConfigEcho,
    pub samples_per_turn: usize,
    pub total_samples: usize,
    pub refinement_depth: u32,
    pub max_step: f64,
    pub max_residuals: Residuals,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigEcho {
    pub center: [f64; 2],
    pub epsilon: f64,
    pub samples: usize,
    pub turns: i32,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Residuals {
    /// Distance of the rotation-number variation from the nearest integer.
    pub rounding: f64,
    /// |ΔT| / mean T.
    pub period_relative: f64,
}

impl CertificateReport {
    pub fn new(trace: &CircuitTrace, certificate: MonodromyCertificate) -> Self {
        let spec = trace.spec;
        let period_relative = (certificate.delta_t / certificate.mean_t).abs();
        Self {
            schema: SCHEMA_VERSION,
            provenance: Provenance {
                config: ConfigEcho {
                    center: [spec.center.j, spec.center.h],
                    epsilon: spec.epsilon,
                    samples: spec.samples,
                    turns: spec.turns,
                },
                samples_per_turn: trace.samples_per_turn,
                total_samples: trace.samples.len(),
                refinement_depth: trace.refinements,
                max_step: trace.max_step,
                max_residuals: Residuals {
                    rounding: certificate.rounding_residual,
                    period_relative,
                },
            },
            certificate,
        }
    }
}

/// The trace table, closure row last. The first line is a comment carrying
/// the schema version.
pub fn trace_csv(trace: &CircuitTrace) -> String {
    use crate::output::num;
    let mut s = format!("# monodromy-lab circuit trace schema={SCHEMA_VERSION}\n{CSV_HEADER}\n");
    for r in trace.rows() {
        let cells = [
            r.t,
            r.j,
            r.h,
            r.x_minus,
            r.x_plus,
            r.x_zero,
            r.theta_raw,
            r.period,
            r.theta_hat,
        ]
        .map(num);
        s.push_str(&cells.join(","));
        s.push('\n');
    }
    s
}
