#![allow(dead_code)]

use std::f64::consts::{FRAC_PI_2, PI};

use monodromy_core::pendulum::PendulumPoint;
use monodromy_core::quad::{integrate, QuadOptions};

/// Root of an increasing-through-zero function on [lo, hi] by plain bisection.
fn bisect(f: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64) -> f64 {
    assert!(f(lo) <= 0.0 && f(hi) >= 0.0, "bad bracket [{lo}, {hi}]");
    for _ in 0..2000 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if f(mid) <= 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Gaps (u, v, w) = (1 + x⁻, 1 − x⁺, x⁰ − 1) by bisection on factored forms of P.
pub fn oracle_gaps(p: PendulumPoint) -> (f64, f64, f64) {
    let (j, h) = (p.j, p.h);
    let d = h - 1.0;
    let r = 0.5 * j * j;
    // Interior maximum of P on (−1, 1).
    let xm = (h - (h * h + 3.0).sqrt()) / 3.0;
    let u = bisect(|u| (h + 1.0 - u) * (2.0 - u) * u - r, 0.0, 1.0 + xm);
    let v = bisect(|v| (d + v) * v * (2.0 - v) - r, 0.0, 1.0 - xm);
    let w0 = d.max(0.0);
    let w = bisect(|w| (w - d) * w * (2.0 + w) - r, w0, w0 + 1.0 + d.abs());
    (u, v, w)
}

fn quad_opts() -> QuadOptions {
    QuadOptions {
        rel_tol: 1e-12,
        abs_tol: 0.0,
        max_intervals: 100_000,
    }
}

/// (Θ, T) by adaptive quadrature after x = x⁻ + (x⁺ − x⁻) sin²s, which
/// removes both endpoint square-root singularities:
///
///   T = 2√2 ∫ ds / √(c − x)
///   Θ = 2√2 j ∫ ds / ((1 − x)(1 + x)√(c − x))
///
/// with 1 − x = v + L cos²s, 1 + x = u + L sin²s, c − x = (w + v) + L cos²s.
pub fn pendulum_oracle(p: PendulumPoint) -> (f64, f64) {
    let (u, v, w) = oracle_gaps(p);
    let l = 2.0 - u - v;
    let m = w + v;
    let s2 = 2f64.sqrt();
    let t = integrate(
        |s: f64| {
            let c = s.cos();
            1.0 / (m + l * c * c).sqrt()
        },
        0.0,
        FRAC_PI_2,
        quad_opts(),
    )
    .unwrap()
    .value;
    let theta = integrate(
        |s: f64| {
            let (sn, cs) = s.sin_cos();
            let one_minus = v + l * cs * cs;
            let one_plus = u + l * sn * sn;
            1.0 / (one_minus * one_plus * (m + l * cs * cs).sqrt())
        },
        0.0,
        FRAC_PI_2,
        quad_opts(),
    )
    .unwrap()
    .value;
    (2.0 * s2 * p.j * theta, 2.0 * s2 * t)
}

/// Points on circles of radius ε ∈ [0.01, 0.1] about (0, 1).
pub fn random_circuit_points(n: usize, seed: u64) -> Vec<PendulumPoint> {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    (0..n)
        .map(|_| {
            let eps = rng.gen_range(0.01..0.1);
            let t = rng.gen_range(0.0..2.0 * PI);
            PendulumPoint::on_circle(PendulumPoint::new(0.0, 1.0), eps, t)
        })
        .collect()
}

/// Real-root Weierstrass invariants, lemniscatic curve first.
pub const CURVES: [(f64, f64); 10] = [
    (4.0, 0.0),
    (4.0, 1.0),
    (4.0, -1.0),
    (3.0, 0.5),
    (10.0, 2.0),
    (7.5, -1.25),
    (1.0, 0.1),
    (12.0, -5.0),
    (2.0, 0.3),
    (100.0, -50.0),
];
