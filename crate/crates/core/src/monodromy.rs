//! SL(2, Z) bookkeeping: unimodular matrices, the Möbius action on τ, the
//! classical/quantum duality μ_q = μ_c⁻ᵀ and the phase gate Q(Z₀)ᵐ acting
//! on the 2-level theta vector.
//!
//! Braid images: σ₁ ↦ b₁ = [[1, 0], [−1, 1]], σ₂ ↦ b₂ = [[1, 1], [0, 1]] = Z₀.

use std::fmt;
use std::ops::Mul;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::thetafn::{self, ModularParameter, ThetaError};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum MonodromyError {
    #[error("[[{a}, {b}], [{c}, {d}]] has determinant {det}, not 1")]
    NotUnimodular { a: i64, b: i64, c: i64, d: i64, det: i128 },
    #[error("gate exponent {0} outside the verified range |m| <= {MAX_GATE_CHECK}")]
    GateRange(i64),
    #[error(transparent)]
    Theta(#[from] ThetaError),
}

/// Largest |m| accepted by [`verify_gate_against_theta`].
pub const MAX_GATE_CHECK: i64 = 8;

/// [[a, b], [c, d]] with ad − bc = 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "[[i64; 2]; 2]", into = "[[i64; 2]; 2]")]
pub struct UnimodularMatrix {
    a: i64,
    b: i64,
    c: i64,
    d: i64,
}

impl UnimodularMatrix {
    pub fn new(a: i64, b: i64, c: i64, d: i64) -> Result<Self, MonodromyError> {
        let det = a as i128 * d as i128 - b as i128 * c as i128;
        if det != 1 {
            return Err(MonodromyError::NotUnimodular { a, b, c, d, det });
        }
        Ok(Self { a, b, c, d })
    }

    pub const IDENTITY: Self = Self { a: 1, b: 0, c: 0, d: 1 };

    /// Z₀ = [[1, 1], [0, 1]], the generator of τ ↦ τ + 1 (equal to b₂).
    pub const Z0: Self = Self { a: 1, b: 1, c: 0, d: 1 };

    pub const B1: Self = Self {
        a: 1,
        b: 0,
        c: -1,
        d: 1,
    };
    pub const B2: Self = Self::Z0;

    /// S = [[0, −1], [1, 0]].
    pub const S: Self = Self {
        a: 0,
        b: -1,
        c: 1,
        d: 0,
    };

    pub fn identity() -> Self {
        Self::IDENTITY
    }
    pub fn z0() -> Self {
        Self::Z0
    }
    pub fn b1() -> Self {
        Self::B1
    }
    pub fn b2() -> Self {
        Self::B2
    }

    pub fn entries(&self) -> [[i64; 2]; 2] {
        [[self.a, self.b], [self.c, self.d]]
    }

    pub fn a(&self) -> i64 {
        self.a
    }
    pub fn b(&self) -> i64 {
        self.b
    }
    pub fn c(&self) -> i64 {
        self.c
    }
    pub fn d(&self) -> i64 {
        self.d
    }

    /// Always 1; kept for reports that print the check.
    pub fn det(&self) -> i128 {
        self.a as i128 * self.d as i128 - self.b as i128 * self.c as i128
    }

    /// Exact inverse [[d, −b], [−c, a]].
    pub fn inverse(&self) -> Self {
        Self {
            a: self.d,
            b: -self.b,
            c: -self.c,
            d: self.a,
        }
    }

    pub fn transpose(&self) -> Self {
        Self {
            a: self.a,
            b: self.c,
            c: self.b,
            d: self.d,
        }
    }

    /// Z⁻ᵀ.
    pub fn inverse_transpose(&self) -> Self {
        self.inverse().transpose()
    }

    pub fn checked_mul(&self, rhs: &Self) -> Option<Self> {
        let e = |x: i64, y: i64, u: i64, v: i64| x.checked_mul(y)?.checked_add(u.checked_mul(v)?);
        Some(Self {
            a: e(self.a, rhs.a, self.b, rhs.c)?,
            b: e(self.a, rhs.b, self.b, rhs.d)?,
            c: e(self.c, rhs.a, self.d, rhs.c)?,
            d: e(self.c, rhs.b, self.d, rhs.d)?,
        })
    }

    /// Zⁿ for any integer n (negative powers use the exact inverse).
    pub fn pow(&self, n: i64) -> Self {
        let mut base = if n < 0 { self.inverse() } else { *self };
        let mut e = n.unsigned_abs();
        let mut acc = Self::IDENTITY;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base;
            }
            e >>= 1;
            if e > 0 {
                base = base * base;
            }
        }
        acc
    }

    /// Z·v for an integer column vector.
    pub fn apply(&self, v: [i64; 2]) -> [i64; 2] {
        [self.a * v[0] + self.b * v[1], self.c * v[0] + self.d * v[1]]
    }

    /// Row vector times matrix, r·Z.
    pub fn apply_row(&self, r: [f64; 2]) -> [f64; 2] {
        [
            r[0] * self.a as f64 + r[1] * self.c as f64,
            r[0] * self.b as f64 + r[1] * self.d as f64,
        ]
    }
}

impl Mul for UnimodularMatrix {
    type Output = Self;

    /// Panics if an entry overflows `i64`.
    fn mul(self, rhs: Self) -> Self {
        self.checked_mul(&rhs).expect("SL(2,Z) product overflows i64")
    }
}

impl TryFrom<[[i64; 2]; 2]> for UnimodularMatrix {
    type Error = MonodromyError;
    fn try_from(m: [[i64; 2]; 2]) -> Result<Self, Self::Error> {
        Self::new(m[0][0], m[0][1], m[1][0], m[1][1])
    }
}

impl From<UnimodularMatrix> for [[i64; 2]; 2] {
    fn from(m: UnimodularMatrix) -> Self {
        m.entries()
    }
}

impl fmt::Display for UnimodularMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{}, {}], [{}, {}]]", self.a, self.b, self.c, self.d)
    }
}

/// τ ↦ (aτ + b)/(cτ + d).
pub fn moebius_act(z: &UnimodularMatrix, tau: ModularParameter) -> ModularParameter {
    let t = tau.value();
    let num = z.a as f64 * t + z.b as f64;
    let den = z.c as f64 * t + z.d as f64;
    // Im((aτ+b)/(cτ+d)) = Im τ / |cτ+d|² > 0 since det = 1.
    ModularParameter::new(num / den).expect("SL(2,Z) preserves the upper half-plane")
}

/// μ_q = μ_c⁻ᵀ.
pub fn quantum_dual(mu_c: &UnimodularMatrix) -> UnimodularMatrix {
    mu_c.inverse_transpose()
}

/// Q(Z₀)ᵐ = diag(1, iᵐ) in the basis (θ̃_{2,0}, θ̃_{2,1}).
///
/// The phase is stored as m mod 4 so products and powers stay exact.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PhaseGate {
    quarter_turns: u8,
}

const I_POWERS: [Complex64; 4] = [
    Complex64::new(1.0, 0.0),
    Complex64::new(0.0, 1.0),
    Complex64::new(-1.0, 0.0),
    Complex64::new(0.0, -1.0),
];

impl PhaseGate {
    pub fn identity() -> Self {
        Self { quarter_turns: 0 }
    }

    /// m mod 4 ∈ {0, 1, 2, 3}.
    pub fn quarter_turns(&self) -> u8 {
        self.quarter_turns
    }

    /// The lower-right entry iᵐ.
    pub fn phase(&self) -> Complex64 {
        I_POWERS[self.quarter_turns as usize]
    }

    pub fn matrix(&self) -> [[Complex64; 2]; 2] {
        let zero = Complex64::new(0.0, 0.0);
        [[I_POWERS[0], zero], [zero, self.phase()]]
    }

    pub fn inverse(&self) -> Self {
        Self {
            quarter_turns: (4 - self.quarter_turns) % 4,
        }
    }

    pub fn apply(&self, v: thetafn::ThetaVector2) -> thetafn::ThetaVector2 {
        thetafn::ThetaVector2 {
            c0: v.c0,
            c1: self.phase() * v.c1,
        }
    }

    /// max |(U U*)_{ij} − δ_{ij}|.
    pub fn unitarity_defect(&self) -> f64 {
        let m = self.matrix();
        let mut worst = 0.0f64;
        for i in 0..2 {
            for j in 0..2 {
                let s: Complex64 = m[i].iter().zip(&m[j]).map(|(a, b)| a * b.conj()).sum();
                let target = if i == j { 1.0 } else { 0.0 };
                worst = worst.max((s - target).norm());
            }
        }
        worst
    }

    pub fn is_unitary(&self) -> bool {
        self.unitarity_defect() <= 1e-14
    }
}

impl Mul for PhaseGate {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        Self {
            quarter_turns: (self.quarter_turns + rhs.quarter_turns) % 4,
        }
    }
}

impl fmt::Display for PhaseGate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let p = ["1", "i", "-1", "-i"][self.quarter_turns as usize];
        write!(f, "diag(1, {p})")
    }
}

pub fn phase_gate(m: i64) -> PhaseGate {
    PhaseGate {
        quarter_turns: m.rem_euclid(4) as u8,
    }
}

/// Holonomy of the heat connection around a loop whose net τ-translation is m.
pub fn heat_holonomy(net_translation: i64) -> PhaseGate {
    phase_gate(net_translation)
}

/// max over components of |θ̃(z, τ+m) − Q(Z₀)ᵐ θ̃(z, τ)|, divided by |θ̃(z, τ)|.
pub fn verify_gate_against_theta(m: i64, z: Complex64, tau: ModularParameter) -> Result<f64, MonodromyError> {
    if m.abs() > MAX_GATE_CHECK {
        return Err(MonodromyError::GateRange(m));
    }
    let base = thetafn::theta_vector2(z, tau)?;
    let moved = thetafn::theta_vector2(z, tau.translate(m))?;
    let predicted = phase_gate(m).apply(base);
    let err = (moved.c0 - predicted.c0).norm().max((moved.c1 - predicted.c1).norm());
    Ok(err / base.norm())
}
