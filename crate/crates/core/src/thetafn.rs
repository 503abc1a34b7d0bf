//! Jacobi theta functions evaluated by direct lattice summation.
//!
//! Conventions:
//!
//! ```text
//! ϑ(z, τ)      = Σ_n exp(iπ n² τ + 2πi n z)
//! ϑ_ab(z, τ)   = exp(iπ a² τ + 2πi a (z + b)) · ϑ(z + aτ + b, τ),   a, b ∈ {0, ½}
//! θ_{k,j}(z,τ) = Σ_n exp((iπ/k)(kn + j)² τ + 2πi (kn + j) z),     0 ≤ j < k
//! θ̃_{k,j}      = exp(kπ z² / (2 Im τ)) · θ_{k,j}
//! ```
//!
//! with ϑ₃ = ϑ_00, ϑ₄ = ϑ_0½, ϑ₂ = ϑ_½0 and ϑ₁ = ϑ_½½ (Mumford's labelling,
//! so ϑ₁ here is the classical ϑ₁ up to sign).
//!
//! Every sum is centred on its dominant term and truncated symmetrically, so
//! the cutoff grows with |Im z| automatically. Only τ-translations are
//! supported; there is no modular reduction, which is why evaluation is
//! refused close to the real axis.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Smallest Im τ accepted by the series evaluators.
pub const IM_MIN: f64 = 0.05;
/// Largest |Im z| accepted by the series evaluators.
pub const Z_IM_MAX: f64 = 10.0;
/// Largest level accepted by [`level_theta`].
pub const K_MAX: u32 = 16;

/// Largest exponent (natural log of the dominant term) we let through
/// before reporting overflow.
const MAX_LOG_MAGNITUDE: f64 = 700.0;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ThetaError {
    #[error("tau = {0} is not in the upper half-plane")]
    NotInUpperHalfPlane(Complex64),
    #[error("Im(tau) = {im} is below the series floor {floor}")]
    Domain { im: f64, floor: f64 },
    #[error("series would overflow: |Im z| = {im_z} (limit {limit}), log-magnitude {log_magnitude:.1}")]
    Overflow { im_z: f64, limit: f64, log_magnitude: f64 },
    #[error("level index (k = {k}, j = {j}) out of range (need 1 <= k <= {K_MAX}, 0 <= j < k)")]
    Range { k: u32, j: u32 },
    #[error("characteristic entries must be 0 or 1/2, got ({a}, {b})")]
    Characteristic { a: f64, b: f64 },
    #[error("finite-difference step {0} outside [1e-6, 1e-2]")]
    Step(f64),
}

/// A point τ of the upper half-plane.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Complex64", into = "Complex64")]
pub struct ModularParameter(Complex64);

impl ModularParameter {
    pub fn new(tau: Complex64) -> Result<Self, ThetaError> {
        if tau.im > 0.0 && tau.is_finite() {
            Ok(Self(tau))
        } else {
            Err(ThetaError::NotInUpperHalfPlane(tau))
        }
    }

    pub fn from_parts(re: f64, im: f64) -> Result<Self, ThetaError> {
        Self::new(Complex64::new(re, im))
    }

    pub fn value(self) -> Complex64 {
        self.0
    }

    pub fn re(self) -> f64 {
        self.0.re
    }

    pub fn im(self) -> f64 {
        self.0.im
    }

    /// τ ↦ τ + n. Im τ is unchanged, so the result is always valid.
    pub fn translate(self, n: i64) -> Self {
        Self(self.0 + n as f64)
    }
}

impl TryFrom<Complex64> for ModularParameter {
    type Error = ThetaError;

    fn try_from(value: Complex64) -> Result<Self, Self::Error> {
        Self::new(value)
    }
}

impl From<ModularParameter> for Complex64 {
    fn from(value: ModularParameter) -> Self {
        value.0
    }
}

/// Theta characteristic (a, b) with a, b ∈ {0, ½}.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Characteristic {
    a_half: bool,
    b_half: bool,
}

impl Characteristic {
    /// ϑ₁ = ϑ_½½
    pub const THETA1: Self = Self {
        a_half: true,
        b_half: true,
    };
    /// ϑ₂ = ϑ_½0
    pub const THETA2: Self = Self {
        a_half: true,
        b_half: false,
    };
    /// ϑ₃ = ϑ_00
    pub const THETA3: Self = Self {
        a_half: false,
        b_half: false,
    };
    /// ϑ₄ = ϑ_0½
    pub const THETA4: Self = Self {
        a_half: false,
        b_half: true,
    };

    pub fn new(a: f64, b: f64) -> Result<Self, ThetaError> {
        let half = |v: f64| {
            if v == 0.0 {
                Some(false)
            } else if v == 0.5 {
                Some(true)
            } else {
                None
            }
        };
        match (half(a), half(b)) {
            (Some(a_half), Some(b_half)) => Ok(Self { a_half, b_half }),
            _ => Err(ThetaError::Characteristic { a, b }),
        }
    }

    pub fn a(self) -> f64 {
        if self.a_half {
            0.5
        } else {
            0.0
        }
    }

    pub fn b(self) -> f64 {
        if self.b_half {
            0.5
        } else {
            0.0
        }
    }
}

/// Coordinates of the 2-level theta vector in the basis (θ̃_{2,0}, θ̃_{2,1}).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ThetaVector2 {
    pub c0: Complex64,
    pub c1: Complex64,
}

impl ThetaVector2 {
    pub fn norm(&self) -> f64 {
        (self.c0.norm_sqr() + self.c1.norm_sqr()).sqrt()
    }
}

/// Half-width of the summation window around the dominant term.
fn default_half_width(im_tau: f64) -> usize {
    (40.0 / (PI * im_tau)).sqrt().ceil() as usize + 5
}

fn check_args(z: Complex64, tau: ModularParameter) -> Result<(), ThetaError> {
    if tau.im() < IM_MIN {
        return Err(ThetaError::Domain {
            im: tau.im(),
            floor: IM_MIN,
        });
    }
    if z.im.abs() > Z_IM_MAX {
        return Err(ThetaError::Overflow {
            im_z: z.im.abs(),
            limit: Z_IM_MAX,
            log_magnitude: f64::INFINITY,
        });
    }
    Ok(())
}

fn check_level(k: u32, j: u32) -> Result<(), ThetaError> {
    if k == 0 || k > K_MAX || j >= k {
        Err(ThetaError::Range { k, j })
    } else {
        Ok(())
    }
}

/// The summation window for θ_{k,j}: the integers n with |n − n*| ≤ half_width,
/// n* being the index of the largest term.
struct Window {
    first: i64,
    last: i64,
}

fn window(k: u32, j: u32, z: Complex64, tau: ModularParameter, half_width: usize) -> Result<Window, ThetaError> {
    let kf = f64::from(k);
    // |term| = exp(-(π/k) m² Im τ - 2π m Im z), maximal at m* = -k Im z / Im τ.
    let m_star = -kf * z.im / tau.im();
    let n_star = ((m_star - f64::from(j)) / kf).round();
    let log_magnitude = PI * kf * z.im * z.im / tau.im();
    if log_magnitude > MAX_LOG_MAGNITUDE {
        return Err(ThetaError::Overflow {
            im_z: z.im.abs(),
            limit: Z_IM_MAX,
            log_magnitude,
        });
    }
    let n_star = n_star as i64;
    let hw = half_width as i64;
    Ok(Window {
        first: n_star - hw,
        last: n_star + hw,
    })
}

#[inline]
fn level_term(k: u32, m: f64, z: Complex64, tau: Complex64) -> Complex64 {
    let i = Complex64::i();
    (i * PI * (m * m / f64::from(k)) * tau + i * (2.0 * PI * m) * z).exp()
}

/// Sums the window from both tails inward so small terms are added first.
fn sum_window<F: Fn(f64) -> Complex64>(w: &Window, k: u32, j: u32, term: F) -> Complex64 {
    let kf = i64::from(k);
    let jf = i64::from(j);
    let mut acc = Complex64::new(0.0, 0.0);
    let (mut lo, mut hi) = (w.first, w.last);
    while lo < hi {
        acc += term((kf * lo + jf) as f64);
        acc += term((kf * hi + jf) as f64);
        lo += 1;
        hi -= 1;
    }
    if lo == hi {
        acc += term((kf * lo + jf) as f64);
    }
    acc
}

fn level_sum(k: u32, j: u32, z: Complex64, tau: ModularParameter, half_width: usize) -> Result<Complex64, ThetaError> {
    let w = window(k, j, z, tau, half_width)?;
    let t = tau.value();
    Ok(sum_window(&w, k, j, |m| level_term(k, m, z, t)))
}

/// ϑ(z, τ).
pub fn theta(z: Complex64, tau: ModularParameter) -> Result<Complex64, ThetaError> {
    check_args(z, tau)?;
    level_sum(1, 0, z, tau, default_half_width(tau.im()))
}

/// ϑ(z, τ) summed over an explicit window of `half_width` terms on each
/// side of the dominant one. Used to check truncation self-consistency.
pub fn theta_truncated(z: Complex64, tau: ModularParameter, half_width: usize) -> Result<Complex64, ThetaError> {
    check_args(z, tau)?;
    level_sum(1, 0, z, tau, half_width)
}

/// The default half-width used by [`theta`] at this τ.
pub fn series_half_width(tau: ModularParameter) -> usize {
    default_half_width(tau.im())
}

/// ϑ_ab(z, τ).
pub fn theta_char(chi: Characteristic, z: Complex64, tau: ModularParameter) -> Result<Complex64, ThetaError> {
    check_args(z, tau)?;
    let (a, b) = (chi.a(), chi.b());
    let t = tau.value();
    let shifted = z + a * t + b;
    let inner = level_sum(1, 0, shifted, tau, default_half_width(tau.im()))?;
    let i = Complex64::i();
    let prefactor = (i * PI * a * a * t + i * (2.0 * PI * a) * (z + b)).exp();
    Ok(prefactor * inner)
}

pub fn theta1(z: Complex64, tau: ModularParameter) -> Result<Complex64, ThetaError> {
    theta_char(Characteristic::THETA1, z, tau)
}

pub fn theta2(z: Complex64, tau: ModularParameter) -> Result<Complex64, ThetaError> {
    theta_char(Characteristic::THETA2, z, tau)
}

pub fn theta3(z: Complex64, tau: ModularParameter) -> Result<Complex64, ThetaError> {
    theta_char(Characteristic::THETA3, z, tau)
}

pub fn theta4(z: Complex64, tau: ModularParameter) -> Result<Complex64, ThetaError> {
    theta_char(Characteristic::THETA4, z, tau)
}

/// Theta constants (ϑ₂(0,τ), ϑ₃(0,τ), ϑ₄(0,τ)).
pub fn theta_constants(tau: ModularParameter) -> Result<(Complex64, Complex64, Complex64), ThetaError> {
    let zero = Complex64::new(0.0, 0.0);
    Ok((theta2(zero, tau)?, theta3(zero, tau)?, theta4(zero, tau)?))
}

/// θ_{k,j}(z, τ).
pub fn level_theta(k: u32, j: u32, z: Complex64, tau: ModularParameter) -> Result<Complex64, ThetaError> {
    check_level(k, j)?;
    check_args(z, tau)?;
    level_sum(k, j, z, tau, default_half_width(tau.im()))
}

/// exp(kπ z² / (2 Im τ)); depends on τ only through Im τ.
pub fn level_prefactor(k: u32, z: Complex64, tau: ModularParameter) -> Complex64 {
    (f64::from(k) * PI * z * z / (2.0 * tau.im())).exp()
}

/// θ̃_{k,j}(z, τ) = exp(kπ z² / (2 Im τ)) · θ_{k,j}(z, τ).
pub fn modified_level_theta(k: u32, j: u32, z: Complex64, tau: ModularParameter) -> Result<Complex64, ThetaError> {
    let value = level_theta(k, j, z, tau)?;
    Ok(level_prefactor(k, z, tau) * value)
}

/// (θ̃_{2,0}(z, τ), θ̃_{2,1}(z, τ)).
pub fn theta_vector2(z: Complex64, tau: ModularParameter) -> Result<ThetaVector2, ThetaError> {
    Ok(ThetaVector2 {
        c0: modified_level_theta(2, 0, z, tau)?,
        c1: modified_level_theta(2, 1, z, tau)?,
    })
}

/// Central-difference approximations of ∂_τ θ_{k,j} and ∂²_z θ_{k,j}.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HeatTerms {
    pub d_tau: Complex64,
    pub d_zz: Complex64,
}

impl HeatTerms {
    /// |∂_τ θ + (i / 4πk) ∂²_z θ|, the holomorphic heat operator.
    pub fn residual(&self, k: u32) -> f64 {
        let coeff = Complex64::new(0.0, 1.0 / (4.0 * PI * f64::from(k)));
        (self.d_tau + coeff * self.d_zz).norm()
    }

    /// |∂_τ θ + c · ∂²_z θ| for an arbitrary real coefficient `c`, used to
    /// measure how far other sign/normalisation conventions are from zero.
    pub fn residual_with_real_coefficient(&self, c: f64) -> f64 {
        (self.d_tau + c * self.d_zz).norm()
    }
}

/// Central differences of width `step` in τ (along +1) and z (along the
/// real axis), applied term by term to the lattice sum.
///
/// The stencils act on each exponential exactly:
/// `[f(τ+h) − f(τ−h)]/2h` multiplies a term by `i sin(π m² h / k) / h`, and
/// `[f(z+h) − 2f(z) + f(z−h)]/h²` multiplies it by `−4 sin²(π m h) / h²`.
/// Evaluating the multipliers per term yields the same difference quotients
/// without the cancellation of subtracting nearly equal theta values.
pub fn heat_terms(k: u32, j: u32, z: Complex64, tau: ModularParameter, step: f64) -> Result<HeatTerms, ThetaError> {
    check_level(k, j)?;
    check_args(z, tau)?;
    if !(1e-6..=1e-2).contains(&step) {
        return Err(ThetaError::Step(step));
    }
    let w = window(k, j, z, tau, default_half_width(tau.im()))?;
    let t = tau.value();
    let kf = f64::from(k);
    let d_tau = sum_window(&w, k, j, |m| {
        let mult = Complex64::new(0.0, (PI * m * m * step / kf).sin() / step);
        mult * level_term(k, m, z, t)
    });
    let d_zz = sum_window(&w, k, j, |m| {
        let s = (PI * m * step).sin();
        -4.0 * s * s / (step * step) * level_term(k, m, z, t)
    });
    Ok(HeatTerms { d_tau, d_zz })
}

/// Residual of the holomorphic heat equation for θ_{k,j} at (z, τ).
pub fn heat_residual(k: u32, j: u32, z: Complex64, tau: ModularParameter, step: f64) -> Result<f64, ThetaError> {
    Ok(heat_terms(k, j, z, tau, step)?.residual(k))
}

/// k² = ϑ₂⁴(0,τ) / ϑ₃⁴(0,τ).
pub fn modulus_squared(tau: ModularParameter) -> Result<Complex64, ThetaError> {
    let (t2, t3, _) = theta_constants(tau)?;
    Ok(t2.powi(4) / t3.powi(4))
}

/// √k′ with k′ = √(1 − k²), both square roots on the principal branch.
pub fn sqrt_complementary_modulus(tau: ModularParameter) -> Result<Complex64, ThetaError> {
    let k_sq = modulus_squared(tau)?;
    Ok((Complex64::new(1.0, 0.0) - k_sq).sqrt().sqrt())
}
