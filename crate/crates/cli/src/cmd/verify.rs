use std::f64::consts::{FRAC_PI_2, FRAC_PI_4};

use anyhow::anyhow;
use monodromy_core::monodromy::verify_gate_against_theta;
use monodromy_core::quad::{integrate, QuadOptions};
use monodromy_core::thetafn::{self, ModularParameter, ThetaError};
use monodromy_core::weierstrass::{
    carlson_rc, carlson_rf, carlson_rj, theta_root_residuals, translation_swap_residual, CurveData,
};
use num_complex::Complex64;
use serde::Serialize;

use crate::config::{parse_tol, tolerance_table, Failure, Format, TolOverride};
use crate::output;

#[derive(clap::Args, Debug)]
pub struct Args {
    /// Override a named tolerance, e.g. `--tol jacobi=1e-12`. Repeatable.
    #[arg(long = "tol", value_name = "NAME=VAL", value_parser = parse_tol)]
    pub tol: Vec<TolOverride>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
}

#[derive(Debug, Serialize)]
struct CheckLine {
    name: &'static str,
    residual: f64,
    tolerance: f64,
    pass: bool,
}

#[derive(Debug, Serialize)]
struct VerifyReport {
    schema: u32,
    pass: bool,
    checks: Vec<CheckLine>,
}

fn tau_grid() -> Vec<ModularParameter> {
    let mut g = Vec::new();
    for re in [-0.8, -0.4, 0.0, 0.4, 0.8] {
        for im in [0.5, 0.8, 1.2, 2.0, 3.0] {
            g.push(ModularParameter::from_parts(re, im).expect("grid lies in the upper half-plane"));
        }
    }
    g
}

fn rel(a: Complex64, b: Complex64) -> f64 {
    (a - b).norm() / b.norm()
}

/// Worst residuals of ϑ2⁴ + ϑ4⁴ = ϑ3⁴, the τ ↦ τ+1 laws for ϑ1..ϑ4 and
/// the level-2 family, and ϑ3(0, τ+1) = √k′ ϑ3(0, τ).
fn theta_suite() -> Result<[f64; 4], ThetaError> {
    let z = Complex64::new(0.23, 0.11);
    let e8 = Complex64::from_polar(1.0, FRAC_PI_4);
    let i = Complex64::i();
    let mut worst = [0.0f64; 4];
    for t in tau_grid() {
        let s = t.translate(1);
        let (t2, t3, t4) = thetafn::theta_constants(t)?;
        worst[0] = worst[0].max((t2.powi(4) + t4.powi(4) - t3.powi(4)).norm() / t3.powi(4).norm());
        let lines = [
            rel(thetafn::theta1(z, s)?, e8 * thetafn::theta1(z, t)?),
            rel(thetafn::theta2(z, s)?, e8 * thetafn::theta2(z, t)?),
            rel(thetafn::theta3(z, s)?, thetafn::theta4(z, t)?),
            rel(thetafn::theta4(z, s)?, thetafn::theta3(z, t)?),
        ];
        worst[1] = lines.into_iter().fold(worst[1], f64::max);
        let level = [
            rel(thetafn::level_theta(2, 0, z, s)?, thetafn::level_theta(2, 0, z, t)?),
            rel(thetafn::level_theta(2, 1, z, s)?, i * thetafn::level_theta(2, 1, z, t)?),
        ];
        worst[2] = level.into_iter().fold(worst[2], f64::max);
        let lhs = thetafn::theta3(Complex64::new(0.0, 0.0), s)?;
        worst[3] = worst[3].max(rel(lhs, thetafn::sqrt_complementary_modulus(t)? * t3));
    }
    Ok(worst)
}

/// Worst heat residual over two level-2 samples, and how the residual
/// responds to halving the difference step (|ratio − 4| for a second-order
/// stencil).
fn heat_suite() -> Result<(f64, f64), ThetaError> {
    let z = Complex64::new(0.1, 0.05);
    let t = ModularParameter::from_parts(0.0, 1.0)?;
    let h1 = thetafn::heat_residual(2, 0, z, t, 1e-4)?;
    let h2 = thetafn::heat_residual(
        2,
        1,
        Complex64::new(0.0, 0.0),
        ModularParameter::from_parts(0.0, 2.0)?,
        1e-4,
    )?;
    let half = thetafn::heat_residual(2, 0, z, t, 5e-5)?;
    Ok((h1.max(h2), (h1 / half - 4.0).abs()))
}

const CURVES: [(f64, f64); 6] = [
    (4.0, 0.0),
    (4.0, 1.0),
    (3.0, 0.5),
    (7.5, -1.25),
    (12.0, -5.0),
    (100.0, -50.0),
];

fn curve_suite() -> anyhow::Result<(f64, f64)> {
    let (mut bridge, mut swap) = (0.0f64, 0.0f64);
    for &(g2, g3) in CURVES.iter() {
        let curve = CurveData::from_invariants(g2, g3)?;
        bridge = bridge.max(theta_root_residuals(&curve)?.max());
        swap = swap.max(translation_swap_residual(&curve)?);
    }
    // τ of the lemniscatic curve g2 = 4, g3 = 0 is exactly i.
    let lemn = CurveData::from_invariants(4.0, 0.0)?;
    bridge = bridge.max((lemn.tau().value() - Complex64::i()).norm());
    Ok((bridge, swap))
}

/// Carlson forms against direct quadrature. With t = tan²θ the integrals
/// run over [0, π/2] with bounded integrands:
///
///   R_F = ∫ tanθ sec²θ / √Π(tan²θ + x_k) dθ
///   R_J = 3 ∫ tanθ sec²θ / ((tan²θ + p) √Π(tan²θ + x_k)) dθ
fn carlson_suite() -> anyhow::Result<f64> {
    let opts = QuadOptions {
        rel_tol: 1e-13,
        abs_tol: 0.0,
        max_intervals: 100_000,
    };
    let kernel = |x: f64, y: f64, z: f64| {
        move |th: f64| {
            let (s, c) = th.sin_cos();
            if c <= 0.0 {
                return (0.0, 0.0);
            }
            let t = (s / c).powi(2);
            let w = s / (c * c * c);
            (t, w / ((t + x) * (t + y) * (t + z)).sqrt())
        }
    };
    let points = [
        (0.5, 1.0, 2.0, 1.5),
        (1.0, 2.0, 3.0, 4.0),
        (0.2, 0.7, 3.5, 0.3),
        (2.0, 3.0, 4.0, 5.0),
    ];
    let mut worst = 0.0f64;
    for (x, y, z, p) in points {
        let k = kernel(x, y, z);
        let rf = integrate(|th| k(th).1, 0.0, FRAC_PI_2, opts)?.value;
        let rj = 3.0
            * integrate(
                |th| {
                    let (t, f) = k(th);
                    f / (t + p)
                },
                0.0,
                FRAC_PI_2,
                opts,
            )?
            .value;
        worst = worst
            .max((carlson_rf(x, y, z)? - rf).abs() / rf)
            .max((carlson_rj(x, y, z, p)? - rj).abs() / rj);
    }
    // R_C(x, y) = R_F(x, y, y).
    for (x, y) in [(0.25, 2.0), (2.0, 0.5), (1.0, 1.0)] {
        let rf = carlson_rf(x, y, y)?;
        worst = worst.max((carlson_rc(x, y)? - rf).abs() / rf);
    }
    Ok(worst)
}

fn gate_suite() -> anyhow::Result<f64> {
    let samples = [
        (Complex64::new(0.1, 0.0), Complex64::new(0.0, 1.0)),
        (Complex64::new(0.37, 0.2), Complex64::new(0.3, 0.8)),
        (Complex64::new(-0.2, 0.45), Complex64::new(-0.45, 1.7)),
    ];
    let mut worst = 0.0f64;
    for m in 1..=4 {
        for (z, tau) in samples {
            worst = worst.max(verify_gate_against_theta(m, z, ModularParameter::new(tau)?)?);
        }
    }
    Ok(worst)
}

fn measure() -> anyhow::Result<Vec<(&'static str, f64)>> {
    let theta = theta_suite()?;
    let (heat, heat_order) = heat_suite()?;
    let (bridge, swap) = curve_suite()?;
    Ok(vec![
        ("jacobi", theta[0]),
        ("translation", theta[1]),
        ("level_translation", theta[2]),
        ("sqrt_kprime", theta[3]),
        ("heat", heat),
        ("heat_order", heat_order),
        ("bridge", bridge),
        ("swap", swap),
        ("carlson", carlson_suite()?),
        ("gate", gate_suite()?),
    ])
}

pub fn run(args: Args) -> Result<(), Failure> {
    let tol = tolerance_table(&args.tol)?;
    let measured = measure().map_err(|e| Failure::Check(e.context("identity suite aborted")))?;
    let checks: Vec<CheckLine> = measured
        .into_iter()
        .map(|(name, residual)| {
            let tolerance = tol[name];
            CheckLine {
                name,
                residual,
                tolerance,
                pass: residual.is_finite() && residual <= tolerance,
            }
        })
        .collect();
    let pass = checks.iter().all(|c| c.pass);

    let text = match args.format {
        Format::Csv => {
            let mut s = String::from("check,residual,tolerance,status\n");
            for c in &checks {
                let status = if c.pass { "PASS" } else { "FAIL" };
                s.push_str(&format!("{},{:.3e},{:.3e},{status}\n", c.name, c.residual, c.tolerance));
            }
            s
        }
        Format::Json => output::json(&VerifyReport {
            schema: crate::report::SCHEMA_VERSION,
            pass,
            checks,
        })?,
    };
    output::emit(None, &text)?;
    if pass {
        Ok(())
    } else {
        Err(Failure::Check(anyhow!(
            "one or more identity checks exceeded tolerance"
        )))
    }
}
