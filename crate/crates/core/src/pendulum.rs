//! The spherical pendulum in (j, h) = (angular momentum, energy):
//!
//! ```text
//! P(x) = 2(h − x)(1 − x²) − j²,   roots x⁻ ≤ x⁺ < x⁰
//! Θ    = 2j ∫_{x⁻}^{x⁺} dx / ((1 − x²)√P)      (rotation number, radians)
//! T    = 2  ∫_{x⁻}^{x⁺} dx / √P                (first-return time)
//! ```
//!
//! Θ and T are evaluated through Carlson forms. Near the circuit around
//! the focus-focus value (0, 1), x⁻ hugs −1 and x⁺ hugs +1, i.e. the poles
//! of 1/(1 − x²), so the roots are carried as gaps u = 1 + x⁻, v = 1 − x⁺,
//! w = x⁰ − 1, each solved by Newton on a factored form of P.

use std::f64::consts::PI;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::monodromy::{phase_gate, quantum_dual, PhaseGate, UnimodularMatrix};
use crate::thetafn::{ModularParameter, ThetaError};
use crate::weierstrass::{CubicPoly, CurveError, Segment};

pub const DEFAULT_EPSILON: f64 = 0.05;
pub const DEFAULT_SAMPLES: usize = 2048;
pub const MIN_SAMPLES: usize = 256;
pub const MAX_EPSILON: f64 = 0.1;
pub const N_MAX: usize = 1 << 20;
/// Largest |ΔΘ̂| (turns) tolerated between consecutive samples.
pub const STEP_LIMIT: f64 = 0.25;
/// Distance of ΔΘ̂ from an integer tolerated by [`certify`].
pub const ROUNDING_TOL: f64 = 0.01;
/// |ΔT| / mean T tolerated by [`certify`].
pub const PERIOD_TOL: f64 = 1e-6;
const GAP_TOL: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum PendulumError {
    #[error("(j, h) = ({j}, {h}) is a critical value: {reason}")]
    DegeneratePoint { j: f64, h: f64, reason: &'static str },
    #[error("(j, h) = ({j}, {h}) lies outside the region of motion")]
    OutsideRegion { j: f64, h: f64 },
    #[error("epsilon {0} outside (0, {MAX_EPSILON}]")]
    Epsilon(f64),
    #[error("{0} samples requested; need at least {MIN_SAMPLES}")]
    TooFewSamples(usize),
    #[error("turns must be nonzero")]
    ZeroTurns,
    #[error("consecutive samples still differ by {max_step:.3} turns at N = {samples}; shrink epsilon")]
    RefinementExceeded { samples: usize, max_step: f64 },
    #[error("variation of the rotation number {delta:.6} is not within {ROUNDING_TOL} of an integer; refine or shrink epsilon")]
    NonIntegralVariation { delta: f64 },
    #[error("first-return time changes by {delta_t:e} around the loop (mean {mean_t})")]
    PeriodNotSingleValued { delta_t: f64, mean_t: f64 },
    #[error(transparent)]
    Curve(#[from] CurveError),
    #[error(transparent)]
    Theta(#[from] ThetaError),
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PendulumPoint {
    pub j: f64,
    pub h: f64,
}

impl PendulumPoint {
    pub fn new(j: f64, h: f64) -> Self {
        Self { j, h }
    }

    /// The point at angle t on the circle of radius ε about `center`.
    pub fn on_circle(center: PendulumPoint, epsilon: f64, t: f64) -> Self {
        let (s, c) = t.sin_cos();
        Self {
            j: center.j + epsilon * c,
            h: center.h + epsilon * s,
        }
    }
}

/// 2x³ − 2hx² − 2x + (2h − j²).
pub fn pendulum_poly(p: PendulumPoint) -> CubicPoly {
    CubicPoly::real(2.0, -2.0 * p.h, -2.0, 2.0 * p.h - p.j * p.j).expect("leading coefficient is 2")
}

/// Roots and the gaps that matter near x = ±1.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PendulumRoots {
    pub x_minus: f64,
    pub x_plus: f64,
    pub x_zero: f64,
    /// 1 + x⁻
    pub u: f64,
    /// 1 − x⁺
    pub v: f64,
    /// x⁰ − 1
    pub w: f64,
}

/// Newton on (c₀ + s₀y)(c₁ + s₁y)(c₂ + s₂y) = rhs.
fn newton_factored(factors: [(f64, f64); 3], rhs: f64, y0: f64) -> f64 {
    let eval = |y: f64| {
        let v = factors.map(|(c, s)| c + s * y);
        let f = v[0] * v[1] * v[2] - rhs;
        let df = factors[0].1 * v[1] * v[2] + v[0] * factors[1].1 * v[2] + v[0] * v[1] * factors[2].1;
        (f, df)
    };
    let mut y = y0;
    let (mut f, mut df) = eval(y);
    for _ in 0..60 {
        if f == 0.0 || df == 0.0 {
            break;
        }
        let next = y - f / df;
        let (fn_, dfn) = eval(next);
        if !(fn_.abs() < f.abs()) {
            break;
        }
        y = next;
        f = fn_;
        df = dfn;
    }
    y
}

pub fn pendulum_roots(p: PendulumPoint) -> Result<PendulumRoots, PendulumError> {
    let PendulumPoint { j, h } = p;
    if !(j.is_finite() && h.is_finite()) {
        return Err(PendulumError::OutsideRegion { j, h });
    }
    let delta = h - 1.0;
    let half_j2 = 0.5 * j * j;
    // Seeds: the exact factorisation at j = 0, otherwise the trigonometric roots.
    let (u0, v0, w0) = if j == 0.0 {
        if h == 1.0 {
            return Err(PendulumError::DegeneratePoint {
                j,
                h,
                reason: "x⁺ = x⁰ = 1 (focus-focus value)",
            });
        }
        if h < 1.0 {
            (0.0, 1.0 - h, 0.0)
        } else {
            (0.0, 0.0, delta)
        }
    } else {
        let r = pendulum_poly(p)
            .real_roots()
            .ok_or(PendulumError::OutsideRegion { j, h })?;
        (1.0 + r[0], 1.0 - r[1], r[2] - 1.0)
    };
    if u0 < -1e-8 || v0 < -1e-8 {
        return Err(PendulumError::OutsideRegion { j, h });
    }
    let (u, v, w) = if j == 0.0 {
        (u0, v0, w0)
    } else {
        (
            newton_factored([(h + 1.0, -1.0), (2.0, -1.0), (0.0, 1.0)], half_j2, u0.max(0.0)),
            newton_factored([(delta, 1.0), (0.0, 1.0), (2.0, -1.0)], half_j2, v0.max(0.0)),
            newton_factored([(-delta, 1.0), (0.0, 1.0), (2.0, 1.0)], half_j2, w0.max(0.0)),
        )
    };
    let roots = PendulumRoots {
        x_minus: -1.0 + u,
        x_plus: 1.0 - v,
        x_zero: 1.0 + w,
        u,
        v,
        w,
    };
    if 2.0 - u - v <= GAP_TOL {
        return Err(PendulumError::DegeneratePoint {
            j,
            h,
            reason: "x⁻ = x⁺ (relative equilibrium)",
        });
    }
    if v + w <= GAP_TOL {
        return Err(PendulumError::DegeneratePoint {
            j,
            h,
            reason: "x⁺ = x⁰ (focus-focus value)",
        });
    }
    if u < 0.0 || v < 0.0 || w < 0.0 {
        return Err(PendulumError::OutsideRegion { j, h });
    }
    Ok(roots)
}

/// The ε-expansion of the roots on the circuit around (0, 1):
/// x⁻ ≈ −1 + ε²cos²t/8, x⁺ ≈ 1 − (ε/2)(1 − sin t), x⁰ ≈ 1 + (ε/2)(1 + sin t).
///
/// These are not exact (their sum is 1 + ε²cos²t/8 instead of h) — only
/// O(ε²) for x⁺, x⁰ and O(ε³) for x⁻.
pub fn approximate_roots(epsilon: f64, t: f64) -> (f64, f64, f64) {
    let (s, c) = t.sin_cos();
    (
        -1.0 + epsilon * epsilon * c * c / 8.0,
        1.0 - 0.5 * epsilon * (1.0 - s),
        1.0 + 0.5 * epsilon * (1.0 + s),
    )
}

fn segment(r: &PendulumRoots) -> Segment {
    Segment {
        c_minus_b: r.w + r.v,
        c_minus_a: 2.0 + r.w - r.u,
        lead: 2.0,
    }
}

/// T = 2∫dx/√P.
pub fn period(r: &PendulumRoots) -> Result<f64, PendulumError> {
    Ok(2.0 * segment(r).first_kind()?)
}

/// Θ (radians) and T at a regular point.
///
/// With 1/(1 − x²) = ½[1/(1 − x) + 1/(1 + x)] and I₃(p) = ∫dx/((x − p)√P),
/// Θ = 2j·½[−I₃(+1) + I₃(−1)]. At j = 0 the integral blows up exactly where
/// the prefactor vanishes; the value there is the limit from j > 0, which is
/// π for h < 1 and 2π for h > 1.
pub fn rotation_and_period(p: PendulumPoint) -> Result<(f64, f64), PendulumError> {
    let r = pendulum_roots(p)?;
    rotation_and_period_from_roots(p, &r)
}

fn rotation_and_period_from_roots(p: PendulumPoint, r: &PendulumRoots) -> Result<(f64, f64), PendulumError> {
    let seg = segment(r);
    let t = 2.0 * seg.first_kind()?;
    if p.j == 0.0 {
        let theta = if p.h < 1.0 { PI } else { 2.0 * PI };
        return Ok((theta, t));
    }
    // Pole +1: a − p = x⁻ − 1 = u − 2, b − p = x⁺ − 1 = −v.
    let i_plus = seg.third_kind(r.u - 2.0, -r.v)?;
    // Pole −1: a − p = 1 + x⁻ = u, b − p = 1 + x⁺ = 2 − v.
    let i_minus = seg.third_kind(r.u, 2.0 - r.v)?;
    Ok((p.j * (i_minus - i_plus), t))
}

/// τ = −Θ̂ + iT with Θ̂ = Θ/2π in turns.
pub fn tau_of_point(p: PendulumPoint) -> Result<ModularParameter, PendulumError> {
    let (theta, t) = rotation_and_period(p)?;
    Ok(ModularParameter::from_parts(-theta / (2.0 * PI), t)?)
}

/// A closed circle in the (j, h) plane.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CircuitSpec {
    pub center: PendulumPoint,
    pub epsilon: f64,
    /// Initial sample count per turn; doubled while the step contract fails.
    pub samples: usize,
    /// Number of traversals; negative runs clockwise.
    pub turns: i32,
}

impl Default for CircuitSpec {
    fn default() -> Self {
        Self {
            center: PendulumPoint::new(0.0, 1.0),
            epsilon: DEFAULT_EPSILON,
            samples: DEFAULT_SAMPLES,
            turns: 1,
        }
    }
}

impl CircuitSpec {
    /// One counter-clockwise turn around the focus-focus value (0, 1).
    pub fn focus_focus(epsilon: f64, samples: usize) -> Self {
        Self {
            epsilon,
            samples,
            ..Self::default()
        }
    }

    fn validate(&self) -> Result<(), PendulumError> {
        if !(self.epsilon > 0.0 && self.epsilon <= MAX_EPSILON) {
            return Err(PendulumError::Epsilon(self.epsilon));
        }
        if self.samples < MIN_SAMPLES {
            return Err(PendulumError::TooFewSamples(self.samples));
        }
        if self.turns == 0 {
            return Err(PendulumError::ZeroTurns);
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CircuitSample {
    pub t: f64,
    pub j: f64,
    pub h: f64,
    pub x_minus: f64,
    pub x_plus: f64,
    pub x_zero: f64,
    pub theta_raw: f64,
    pub period: f64,
    pub theta_hat: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CircuitTrace {
    pub spec: CircuitSpec,
    /// Samples per turn actually used.
    pub samples_per_turn: usize,
    /// Number of doublings beyond `spec.samples`.
    pub refinements: u32,
    /// On the offset grid t_k = 2π(k + ½)/N, k = 0 .. N·|turns| − 1.
    pub samples: Vec<CircuitSample>,
    /// The first grid point re-evaluated after the full loop.
    pub closure: CircuitSample,
    /// Largest |ΔΘ̂| between consecutive samples, closure included.
    pub max_step: f64,
}

impl CircuitTrace {
    pub fn delta_theta_hat(&self) -> f64 {
        self.closure.theta_hat - self.samples[0].theta_hat
    }

    pub fn delta_period(&self) -> f64 {
        self.closure.period - self.samples[0].period
    }

    pub fn mean_period(&self) -> f64 {
        self.samples.iter().map(|s| s.period).sum::<f64>() / self.samples.len() as f64
    }

    /// τ_k = −Θ̂_k + iT_k along the unwrapped trace, closure last.
    pub fn taus(&self) -> Result<Vec<ModularParameter>, PendulumError> {
        self.samples
            .iter()
            .chain(std::iter::once(&self.closure))
            .map(|s| Ok(ModularParameter::from_parts(-s.theta_hat, s.period)?))
            .collect()
    }

    /// Rows in order, closure row last.
    pub fn rows(&self) -> impl Iterator<Item = &CircuitSample> {
        self.samples.iter().chain(std::iter::once(&self.closure))
    }
}

fn evaluate(spec: &CircuitSpec, t: f64) -> Result<CircuitSample, PendulumError> {
    let angle = if spec.turns < 0 { -t } else { t };
    let p = PendulumPoint::on_circle(spec.center, spec.epsilon, angle);
    let r = pendulum_roots(p)?;
    let (theta_raw, period) = rotation_and_period_from_roots(p, &r)?;
    Ok(CircuitSample {
        t,
        j: p.j,
        h: p.h,
        x_minus: r.x_minus,
        x_plus: r.x_plus,
        x_zero: r.x_zero,
        theta_raw,
        period,
        theta_hat: theta_raw / (2.0 * PI),
    })
}

/// Lifts Θ̂ by the integer that keeps each step as short as possible;
/// returns the largest remaining step.
fn unwrap(samples: &mut [CircuitSample]) -> f64 {
    let mut max_step = 0.0f64;
    for k in 1..samples.len() {
        let prev = samples[k - 1].theta_hat;
        let raw = samples[k].theta_hat;
        let lifted = raw + (prev - raw).round();
        samples[k].theta_hat = lifted;
        max_step = max_step.max((lifted - prev).abs());
    }
    max_step
}

fn trace_once(spec: &CircuitSpec, n: usize) -> Result<(Vec<CircuitSample>, CircuitSample, f64), PendulumError> {
    let total = n * spec.turns.unsigned_abs() as usize;
    let dt = 2.0 * PI / n as f64;
    let mut all: Vec<CircuitSample> = (0..=total)
        .into_par_iter()
        .map(|k| evaluate(spec, dt * (k as f64 + 0.5)))
        .collect::<Result<_, _>>()?;
    let max_step = unwrap(&mut all);
    let closure = all.pop().expect("at least one sample");
    Ok((all, closure, max_step))
}

/// Samples the circuit, doubling N until every step of Θ̂ is below a quarter turn.
pub fn trace(spec: CircuitSpec) -> Result<CircuitTrace, PendulumError> {
    spec.validate()?;
    let mut n = spec.samples;
    let mut refinements = 0;
    loop {
        let (samples, closure, max_step) = trace_once(&spec, n)?;
        if max_step < STEP_LIMIT {
            return Ok(CircuitTrace {
                spec,
                samples_per_turn: n,
                refinements,
                samples,
                closure,
                max_step,
            });
        }
        if n * 2 > N_MAX {
            return Err(PendulumError::RefinementExceeded { samples: n, max_step });
        }
        n *= 2;
        refinements += 1;
    }
}

/// The circle j = ε cos t, h = 1 + ε sin t.
pub fn trace_circuit(epsilon: f64, n_samples: usize) -> Result<CircuitTrace, PendulumError> {
    trace(CircuitSpec::focus_focus(epsilon, n_samples))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MonodromyCertificate {
    /// Net change of the unwrapped rotation number, in turns.
    pub delta_theta_hat: f64,
    /// T(end) − T(start).
    pub delta_t: f64,
    pub mean_t: f64,
    /// −round(ΔΘ̂).
    pub m: i64,
    /// b₂ᵐ
    pub classical_matrix: UnimodularMatrix,
    /// b₁ᵐ = (b₂ᵐ)⁻ᵀ
    pub quantum_matrix: UnimodularMatrix,
    pub gate: PhaseGate,
    /// |ΔΘ̂ − round(ΔΘ̂)|
    pub rounding_residual: f64,
}

pub fn certify(trace: &CircuitTrace) -> Result<MonodromyCertificate, PendulumError> {
    let delta = trace.delta_theta_hat();
    let rounded = delta.round();
    let rounding_residual = (delta - rounded).abs();
    if !(rounding_residual < ROUNDING_TOL) {
        return Err(PendulumError::NonIntegralVariation { delta });
    }
    let delta_t = trace.delta_period();
    let mean_t = trace.mean_period();
    if !(delta_t.abs() < PERIOD_TOL * mean_t) {
        return Err(PendulumError::PeriodNotSingleValued { delta_t, mean_t });
    }
    let m = -(rounded as i64);
    let classical = UnimodularMatrix::B2.pow(m);
    Ok(MonodromyCertificate {
        delta_theta_hat: delta,
        delta_t,
        mean_t,
        m,
        classical_matrix: classical,
        quantum_matrix: quantum_dual(&classical),
        gate: phase_gate(m),
        rounding_residual,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn poly_at_critical_and_axis_points() {
        let p = pendulum_poly(PendulumPoint::new(0.0, 1.0));
        let c = p.coefficients().map(|z| z.re);
        assert_eq!(c, [2.0, -2.0, -2.0, 2.0]);
        let eps = 0.05;
        let r = pendulum_roots(PendulumPoint::new(0.0, 1.0 + eps)).unwrap();
        assert_eq!((r.x_minus, r.x_plus, r.x_zero), (-1.0, 1.0, 1.0 + eps));
        // Vieta: x⁻ + x⁺ + x⁰ = h.
        let q = PendulumPoint::new(0.03, 0.98);
        let r = pendulum_roots(q).unwrap();
        assert!((r.x_minus + r.x_plus + r.x_zero - q.h).abs() < 1e-14);
    }

    #[test]
    fn critical_value_is_rejected() {
        assert!(matches!(
            pendulum_roots(PendulumPoint::new(0.0, 1.0)),
            Err(PendulumError::DegeneratePoint { .. })
        ));
        // Below the bottom equilibrium there is no motion.
        assert!(matches!(
            pendulum_roots(PendulumPoint::new(0.0, -1.5)),
            Err(PendulumError::OutsideRegion { .. }) | Err(PendulumError::DegeneratePoint { .. })
        ));
        assert!(pendulum_roots(PendulumPoint::new(0.5, -0.9)).is_err());
    }

    #[test]
    fn gaps_are_accurate_near_the_poles() {
        // Close to t = π/2 on the circuit, v is ~1e-8 and must keep full
        // relative precision.
        let p = PendulumPoint::on_circle(PendulumPoint::new(0.0, 1.0), 0.05, PI / 2.0 - 1e-4);
        let r = pendulum_roots(p).unwrap();
        let g = (p.h - 1.0 + r.v) * r.v * (2.0 - r.v) - 0.5 * p.j * p.j;
        assert!(g.abs() < 1e-15 * p.j * p.j, "{g}");
        assert!(r.v > 0.0 && r.v < 1e-7);
    }

    #[test]
    fn root_expansion_orders() {
        let eps = 0.05;
        for k in 0..64 {
            let t = 2.0 * PI * (k as f64 + 0.5) / 64.0;
            let r = pendulum_roots(PendulumPoint::on_circle(PendulumPoint::new(0.0, 1.0), eps, t)).unwrap();
            let (am, ap, a0) = approximate_roots(eps, t);
            assert!((r.x_minus - am).abs() < 5.0 * eps.powi(3));
            assert!((r.x_plus - ap).abs() < 5.0 * eps * eps);
            assert!((r.x_zero - a0).abs() < 5.0 * eps * eps);
        }
    }

    #[test]
    fn parity_and_positivity() {
        for &(j, h) in &[(0.04, 1.01), (0.02, 0.97), (0.3, 0.5), (0.01, 1.08)] {
            let (tp, pp) = rotation_and_period(PendulumPoint::new(j, h)).unwrap();
            let (tm, pm) = rotation_and_period(PendulumPoint::new(-j, h)).unwrap();
            assert!(pp > 0.0);
            assert_eq!(pp, pm);
            assert!((tp + tm).abs() < 1e-13 * tp.abs());
            let tau_p = tau_of_point(PendulumPoint::new(j, h)).unwrap();
            let tau_m = tau_of_point(PendulumPoint::new(-j, h)).unwrap();
            assert!((tau_p.re() + tau_m.re()).abs() < 1e-13);
            assert_eq!(tau_p.im(), tau_m.im());
            assert_eq!(tau_p.im(), pp);
        }
    }

    #[test]
    fn axis_convention_is_the_limit_from_positive_j() {
        for &h in &[0.95, 1.05] {
            let (axis, _) = rotation_and_period(PendulumPoint::new(0.0, h)).unwrap();
            let (near, _) = rotation_and_period(PendulumPoint::new(1e-7, h)).unwrap();
            assert!((axis - near).abs() < 1e-4, "h = {h}: {axis} vs {near}");
        }
    }

    #[test]
    fn spec_validation() {
        let bad = CircuitSpec {
            epsilon: 0.2,
            ..CircuitSpec::default()
        };
        assert!(matches!(trace(bad), Err(PendulumError::Epsilon(_))));
        assert!(matches!(
            trace_circuit(0.05, 100),
            Err(PendulumError::TooFewSamples(100))
        ));
        let zero = CircuitSpec {
            turns: 0,
            ..CircuitSpec::default()
        };
        assert!(matches!(trace(zero), Err(PendulumError::ZeroTurns)));
    }

    #[test]
    fn unwrap_lifts_jumps() {
        let mk = |theta_hat| CircuitSample {
            t: 0.0,
            j: 0.0,
            h: 0.0,
            x_minus: 0.0,
            x_plus: 0.0,
            x_zero: 0.0,
            theta_raw: 0.0,
            period: 1.0,
            theta_hat,
        };
        let mut s: Vec<_> = [0.9, 0.95, -0.98, -0.9].into_iter().map(mk).collect();
        let step = unwrap(&mut s);
        let lifted: Vec<f64> = s.iter().map(|x| x.theta_hat).collect();
        assert!((lifted[2] - 1.02).abs() < 1e-12 && (lifted[3] - 1.1).abs() < 1e-12);
        assert!((step - 0.08).abs() < 1e-12);
    }

    #[test]
    fn traced_variation_on_the_circuit() {
        let tr = trace_circuit(0.05, 512).unwrap();
        let cert = certify(&tr).unwrap();
        // Counter-clockwise in (j, h) the lifted rotation number gains one
        // full turn.
        assert!((cert.delta_theta_hat - 1.0).abs() < 1e-6, "{}", cert.delta_theta_hat);
        assert_eq!(cert.m, -1);
        assert_eq!(cert.classical_matrix, UnimodularMatrix::B2.inverse());
        assert_eq!(cert.quantum_matrix, UnimodularMatrix::B1.inverse());
        assert_eq!(cert.gate, phase_gate(-1));
        assert!(tr.max_step < STEP_LIMIT);
        let taus = tr.taus().unwrap();
        let shift = taus.last().unwrap().re() - taus[0].re();
        assert!((shift - cert.m as f64).abs() < 1e-6);
    }

    #[test]
    fn orientation_and_control_loops() {
        let rev = trace(CircuitSpec {
            turns: -1,
            samples: 512,
            ..CircuitSpec::default()
        })
        .unwrap();
        assert!((rev.delta_theta_hat() + 1.0).abs() < 1e-6);
        let control = trace(CircuitSpec {
            center: PendulumPoint::new(0.3, 0.5),
            samples: 256,
            ..CircuitSpec::default()
        })
        .unwrap();
        let cert = certify(&control).unwrap();
        assert_eq!(cert.m, 0);
        assert!(cert.delta_theta_hat.abs() < 1e-9);
        assert_eq!(cert.classical_matrix, UnimodularMatrix::IDENTITY);
    }
}
