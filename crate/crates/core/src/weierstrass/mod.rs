//! Weierstrass cubics 4x³ − g₂x − g₃: roots, half-periods, τ, the Jacobi
//! modulus and the bridge between roots and theta constants.
//!
//! Period normalisation for three real roots e₁ > e₂ > e₃:
//!
//! ```text
//! ω  = ∫_{e₁}^{∞} dx/√P = ∫_{e₃}^{e₂} dx/√P = R_F(0, e₁−e₂, e₁−e₃)
//! ω′ = i ∫_{−∞}^{e₃} dx/√|P|             = i R_F(0, e₂−e₃, e₁−e₃)
//! ```
//!
//! so the closed cycle around [e₃, e₂] (two sheets) integrates to 2ω, and
//! τ = ω′/ω lies on the positive imaginary axis.

mod carlson;
mod cubic;
mod integrals;

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::thetafn::{self, ModularParameter, ThetaError};

pub use carlson::{carlson_rc, carlson_rf, carlson_rj, carlson_rj_with, RjMode};
pub use cubic::CubicPoly;
pub use integrals::{elliptic_first, elliptic_third, Segment};

/// Relative discriminant threshold below which a curve counts as degenerate.
pub const DEGENERACY_TOL: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum CurveError {
    #[error("degenerate curve: {0}")]
    Degenerate(String),
    #[error("unsupported curve: {0}")]
    Unsupported(String),
    #[error("leading coefficient vanishes")]
    NotCubic,
    #[error("outside the supported domain: {0}")]
    Domain(String),
    #[error("pole on the integration path (a - p = {a_minus_p}, b - p = {b_minus_p})")]
    PoleOnPath { a_minus_p: f64, b_minus_p: f64 },
    #[error("bad limits ({a}, {b}): {reason}")]
    RootOrder { a: f64, b: f64, reason: &'static str },
    #[error("cubic is negative on ({a}, {b})")]
    NegativeOnInterval { a: f64, b: f64 },
    #[error(transparent)]
    Theta(#[from] ThetaError),
}

/// Roots of 4x³ − g₂x − g₃.
///
/// All-real roots come back as e₁ > e₂ > e₃; otherwise the triple is sorted
/// by descending real part, then descending imaginary part. That order is
/// only a label; continuation along loops is the job of `braidtrack`.
pub fn roots_from_invariants(g2: Complex64, g3: Complex64) -> Result<[Complex64; 3], CurveError> {
    let disc = g2 * g2 * g2 - 27.0 * g3 * g3;
    let scale = (g2.norm().powi(3)).max(27.0 * g3.norm_sqr());
    if scale == 0.0 || disc.norm() <= DEGENERACY_TOL * scale {
        return Err(CurveError::Degenerate(format!(
            "discriminant g2^3 - 27 g3^2 = {disc} vanishes (g2 = {g2}, g3 = {g3})"
        )));
    }
    let poly = CubicPoly::weierstrass(g2, g3);
    if let Some(mut r) = poly.real_roots() {
        r.reverse();
        return Ok(r.map(Complex64::from));
    }
    let mut r = poly.roots();
    r.sort_by(|x, y| y.re.total_cmp(&x.re).then(y.im.total_cmp(&x.im)));
    Ok(r)
}

/// Real-root convenience: e₁ > e₂ > e₃, or `Unsupported` for complex roots.
pub fn real_roots_from_invariants(g2: f64, g3: f64) -> Result<[f64; 3], CurveError> {
    let r = roots_from_invariants(g2.into(), g3.into())?;
    if r.iter().any(|e| e.im != 0.0) {
        return Err(CurveError::Unsupported(format!(
            "g2 = {g2}, g3 = {g3} has complex roots; only three real roots are supported"
        )));
    }
    Ok(r.map(|e| e.re))
}

/// Invariants (g₂, g₃) of 4(x − e₁)(x − e₂)(x − e₃) with e₁ + e₂ + e₃ = 0.
pub fn invariants_from_roots(roots: [f64; 3]) -> (f64, f64) {
    let [e1, e2, e3] = roots;
    (-4.0 * (e1 * e2 + e1 * e3 + e2 * e3), 4.0 * e1 * e2 * e3)
}

/// (k², k′²) with k² = (e₂ − e₃)/(e₁ − e₃) and k′² = 1 − k².
pub fn jacobi_modulus(roots: [Complex64; 3]) -> Result<(Complex64, Complex64), CurveError> {
    let [e1, e2, e3] = roots;
    let span = e1 - e3;
    let scale = roots.iter().fold(0.0f64, |m, e| m.max(e.norm()));
    if span.norm() <= DEGENERACY_TOL * scale.max(f64::MIN_POSITIVE) {
        return Err(CurveError::Degenerate(format!("e1 = e3 = {e1}")));
    }
    let k_sq = (e2 - e3) / span;
    Ok((k_sq, Complex64::new(1.0, 0.0) - k_sq))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Periods {
    pub omega: f64,
    pub omega_prime: Complex64,
    pub tau: ModularParameter,
}

fn periods_from_roots(roots: [f64; 3]) -> Result<Periods, CurveError> {
    let [e1, e2, e3] = roots;
    let omega = carlson_rf(0.0, e1 - e2, e1 - e3)?;
    let omega_im = carlson_rf(0.0, e2 - e3, e1 - e3)?;
    let omega_prime = Complex64::new(0.0, omega_im);
    let tau = ModularParameter::new(omega_prime / omega)?;
    Ok(Periods {
        omega,
        omega_prime,
        tau,
    })
}

/// Half-periods and τ = ω′/ω for a curve with three real roots.
pub fn periods(g2: f64, g3: f64) -> Result<Periods, CurveError> {
    periods_from_roots(real_roots_from_invariants(g2, g3)?)
}

/// A nondegenerate real-root Weierstrass curve with its periods and modulus.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CurveData {
    g2: f64,
    g3: f64,
    roots: [f64; 3],
    omega: f64,
    omega_prime: Complex64,
    tau: ModularParameter,
    k_sq: f64,
}

impl CurveData {
    pub fn from_invariants(g2: f64, g3: f64) -> Result<Self, CurveError> {
        let roots = real_roots_from_invariants(g2, g3)?;
        let p = periods_from_roots(roots)?;
        let (k_sq, _) = jacobi_modulus(roots.map(Complex64::from))?;
        Ok(Self {
            g2,
            g3,
            roots,
            omega: p.omega,
            omega_prime: p.omega_prime,
            tau: p.tau,
            k_sq: k_sq.re,
        })
    }

    /// Builds the curve whose roots are `roots` shifted to sum to zero.
    pub fn from_roots(roots: [f64; 3]) -> Result<Self, CurveError> {
        let mean = (roots[0] + roots[1] + roots[2]) / 3.0;
        let mut r = roots.map(|e| e - mean);
        r.sort_by(|a, b| b.total_cmp(a));
        let (g2, g3) = invariants_from_roots(r);
        Self::from_invariants(g2, g3)
    }

    pub fn g2(&self) -> f64 {
        self.g2
    }
    pub fn g3(&self) -> f64 {
        self.g3
    }
    /// (e₁, e₂, e₃), descending.
    pub fn roots(&self) -> [f64; 3] {
        self.roots
    }
    pub fn omega(&self) -> f64 {
        self.omega
    }
    pub fn omega_prime(&self) -> Complex64 {
        self.omega_prime
    }
    pub fn tau(&self) -> ModularParameter {
        self.tau
    }
    pub fn k_sq(&self) -> f64 {
        self.k_sq
    }

    pub fn poly(&self) -> CubicPoly {
        CubicPoly::weierstrass(self.g2.into(), self.g3.into())
    }

    fn root_scale(&self) -> f64 {
        self.roots.iter().fold(0.0f64, |m, e| m.max(e.abs()))
    }
}

/// The roots predicted by the theta-constant formulas at (ω, τ):
///
/// ```text
/// e₁ =  π²/(12ω²) [ϑ₃⁴ + ϑ₄⁴]
/// e₂ =  π²/(12ω²) [ϑ₂⁴ − ϑ₄⁴]
/// e₃ = −π²/(12ω²) [ϑ₂⁴ + ϑ₃⁴]
/// ```
pub fn roots_from_theta(omega: f64, tau: ModularParameter) -> Result<[Complex64; 3], ThetaError> {
    let (t2, t3, t4) = thetafn::theta_constants(tau)?;
    let (a2, a3, a4) = (t2.powi(4), t3.powi(4), t4.powi(4));
    let c = PI * PI / (12.0 * omega * omega);
    Ok([c * (a3 + a4), c * (a2 - a4), -c * (a2 + a3)])
}

/// Normalised residuals of the root/theta-constant bridge.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BridgeResiduals {
    /// |(e₂ − e₃) − (π/2ω)² ϑ₂⁴| / max|eᵢ|
    pub diff23: f64,
    /// |(e₁ − e₂) − (π/2ω)² ϑ₄⁴| / max|eᵢ|
    pub diff12: f64,
    /// max_i |eᵢ − eᵢ(θ)| / max|eᵢ| over the three-line formulas
    pub roots: f64,
}

impl BridgeResiduals {
    pub fn max(&self) -> f64 {
        self.diff23.max(self.diff12).max(self.roots)
    }
}

pub fn theta_root_residuals(curve: &CurveData) -> Result<BridgeResiduals, CurveError> {
    let tau = curve.tau();
    let omega = curve.omega();
    let [e1, e2, e3] = curve.roots();
    let scale = curve.root_scale();
    let (t2, _, t4) = thetafn::theta_constants(tau)?;
    let c = (PI / (2.0 * omega)).powi(2);
    let diff23 = (Complex64::from(e2 - e3) - c * t2.powi(4)).norm() / scale;
    let diff12 = (Complex64::from(e1 - e2) - c * t4.powi(4)).norm() / scale;
    let predicted = roots_from_theta(omega, tau)?;
    let roots = curve
        .roots()
        .iter()
        .zip(predicted.iter())
        .map(|(e, p)| (Complex64::from(*e) - p).norm() / scale)
        .fold(0.0f64, f64::max);
    Ok(BridgeResiduals { diff23, diff12, roots })
}

/// Residual of relabelling under τ ↦ τ + 1 with ω fixed: the theta-constant
/// formulas at τ + 1 should return (e₁, e₃, e₂).
pub fn translation_swap_residual(curve: &CurveData) -> Result<f64, CurveError> {
    let shifted = roots_from_theta(curve.omega(), curve.tau().translate(1))?;
    let [e1, e2, e3] = curve.roots();
    let expected = [e1, e3, e2];
    let scale = curve.root_scale();
    Ok(shifted
        .iter()
        .zip(expected.iter())
        .map(|(s, e)| (s - e).norm() / scale)
        .fold(0.0f64, f64::max))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn lemniscatic_roots() {
        let r = roots_from_invariants(c(4.0, 0.0), c(0.0, 0.0)).unwrap();
        assert_eq!(r.map(|e| e.im), [0.0; 3]);
        assert!((r[0].re - 1.0).abs() < 1e-15 && r[1].re.abs() < 1e-15 && (r[2].re + 1.0).abs() < 1e-15);
    }

    #[test]
    fn cube_roots_of_unity_order() {
        let r = roots_from_invariants(c(0.0, 0.0), c(4.0, 0.0)).unwrap();
        let h = 3f64.sqrt() / 2.0;
        let expected = [c(1.0, 0.0), c(-0.5, h), c(-0.5, -h)];
        for (got, want) in r.iter().zip(expected.iter()) {
            assert!((got - want).norm() < 1e-14, "{got} vs {want}");
        }
        let sum: Complex64 = r.iter().sum();
        assert!(sum.norm() < 1e-14);
    }

    #[test]
    fn degenerate_discriminant() {
        // g2 = 3, g3 = 1: 27 - 27 = 0 (double root at 1/2).
        assert!(matches!(
            roots_from_invariants(c(3.0, 0.0), c(1.0, 0.0)),
            Err(CurveError::Degenerate(_))
        ));
        assert!(matches!(
            roots_from_invariants(c(0.0, 0.0), c(0.0, 0.0)),
            Err(CurveError::Degenerate(_))
        ));
    }

    #[test]
    fn modulus_of_lemniscatic() {
        let (k2, kp2) = jacobi_modulus([c(1.0, 0.0), c(0.0, 0.0), c(-1.0, 0.0)]).unwrap();
        assert_eq!(k2, c(0.5, 0.0));
        assert_eq!(k2 + kp2, c(1.0, 0.0));
        assert!(jacobi_modulus([c(1.0, 0.0), c(1.0, 0.0), c(1.0, 0.0)]).is_err());
    }

    #[test]
    fn lemniscatic_periods() {
        let p = periods(4.0, 0.0).unwrap();
        assert!((p.omega - 1.311_028_777_146_06).abs() < 1e-13);
        assert!((p.omega_prime - c(0.0, 1.311_028_777_146_06)).norm() < 1e-13);
        assert!((p.tau.value() - c(0.0, 1.0)).norm() < 1e-14);
    }

    #[test]
    fn complex_root_periods_unsupported() {
        assert!(matches!(periods(0.0, 4.0), Err(CurveError::Unsupported(_))));
    }

    #[test]
    fn modulus_matches_theta_quotient() {
        let curve = CurveData::from_invariants(4.0, 0.0).unwrap();
        let k2 = thetafn::modulus_squared(curve.tau()).unwrap();
        assert!((k2 - curve.k_sq()).norm() < 1e-10);
    }

    #[test]
    fn bridge_on_two_curves() {
        let lem = CurveData::from_invariants(4.0, 0.0).unwrap();
        assert!(theta_root_residuals(&lem).unwrap().max() < 1e-10);
        let other = CurveData::from_invariants(4.0, 1.0).unwrap();
        let r = theta_root_residuals(&other).unwrap();
        assert!(r.max() < 1e-9, "{r:?}");
        // (e₁−e₂) + (e₂−e₃) = e₁−e₃ = (π/2ω)²(ϑ₂⁴+ϑ₄⁴) = (π/2ω)²ϑ₃⁴.
        let (_, t3, _) = thetafn::theta_constants(other.tau()).unwrap();
        let [e1, _, e3] = other.roots();
        let combo = (PI / (2.0 * other.omega())).powi(2) * t3.powi(4);
        assert!((combo - (e1 - e3)).norm() / e1.abs().max(e3.abs()) < 1e-10);
    }

    #[test]
    fn sum_of_roots_and_round_trip() {
        let curve = CurveData::from_invariants(7.5, -1.25).unwrap();
        let [e1, e2, e3] = curve.roots();
        assert!((e1 + e2 + e3).abs() < 1e-12 * e1.abs().max(e3.abs()));
        let (g2, g3) = invariants_from_roots(curve.roots());
        assert!((g2 - 7.5).abs() < 1e-12 * 7.5);
        assert!((g3 + 1.25).abs() < 1e-12 * 7.5);
    }

    #[test]
    fn cycle_integral_is_twice_omega() {
        let curve = CurveData::from_invariants(4.0, 1.0).unwrap();
        let [_, e2, e3] = curve.roots();
        let half_cycle = elliptic_first((e3, e2), &curve.poly()).unwrap();
        assert!((2.0 * half_cycle - 2.0 * curve.omega()).abs() < 1e-13);
    }

    #[test]
    fn translation_swaps_e2_e3() {
        let curve = CurveData::from_invariants(4.0, 1.0).unwrap();
        assert!(translation_swap_residual(&curve).unwrap() < 1e-9);
    }
}
