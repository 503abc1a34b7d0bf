//! Bohr–Sommerfeld bookkeeping on a model torus with angle coordinates φ
//! and cycles normalised by ∮_{γ_k} dφ_j = 2π δ_{jk}.
//!
//! Conventions: actions I are row vectors and change as I ↦ I·Z⁻¹;
//! quantum numbers n label characters χ_n(φ) = e^{i n·φ}, are column
//! vectors, and their spectrum moves as n ↦ Z⁻ᵀ n.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::monodromy::UnimodularMatrix;

/// Distance to the nearest integer accepted by [`bs_check`].
pub const BS_TOL: f64 = 1e-9;
/// Allowed deviation of |hol| from 1.
pub const UNIT_TOL: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum LatticeError {
    #[error("holonomy {value} on cycle {index} is not unitary (|hol| - 1 = {defect:e})")]
    NonUnitaryHolonomy {
        index: usize,
        value: Complex64,
        defect: f64,
    },
    #[error("dimension mismatch: expected {expected}, got {got}")]
    Dimension { expected: usize, got: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct QuantumNumberVector(pub Vec<i64>);

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ActionVector(pub Vec<f64>);

impl QuantumNumberVector {
    pub fn dim(&self) -> usize {
        self.0.len()
    }
}

impl ActionVector {
    pub fn dim(&self) -> usize {
        self.0.len()
    }
}

impl From<[i64; 2]> for QuantumNumberVector {
    fn from(n: [i64; 2]) -> Self {
        Self(n.to_vec())
    }
}

impl From<[f64; 2]> for ActionVector {
    fn from(i: [f64; 2]) -> Self {
        Self(i.to_vec())
    }
}

fn pair2<T: Copy>(v: &[T]) -> Result<[T; 2], LatticeError> {
    match v {
        [a, b] => Ok([*a, *b]),
        _ => Err(LatticeError::Dimension {
            expected: 2,
            got: v.len(),
        }),
    }
}

/// ((1/2π)∮_{γ_1} θ, …) for θ = Σ I_k dφ_k.
///
/// Each cycle contributes 2π·I_k, so the map returns I itself; no
/// multiply-then-divide, which keeps integers exact.
pub fn period_map(i: &ActionVector) -> Vec<f64> {
    i.0.clone()
}

pub fn bs_check(i: &ActionVector) -> bool {
    period_map(i).iter().all(|p| (p - p.round()).abs() <= BS_TOL)
}

/// I_k = (arg hol_k + 2π w_k)/(2π) with arg in (−π, π].
///
/// The integer part of an action is invisible to the holonomy, so the
/// caller must say which branch (winding) each cycle sits on.
pub fn holonomy_to_action(hol: &[Complex64], winding: &[i64]) -> Result<ActionVector, LatticeError> {
    if hol.len() != winding.len() {
        return Err(LatticeError::Dimension {
            expected: hol.len(),
            got: winding.len(),
        });
    }
    let mut out = Vec::with_capacity(hol.len());
    for (index, (h, w)) in hol.iter().zip(winding).enumerate() {
        let defect = h.norm() - 1.0;
        if !(defect.abs() <= UNIT_TOL) {
            return Err(LatticeError::NonUnitaryHolonomy {
                index,
                value: *h,
                defect,
            });
        }
        let mut arg = h.arg();
        if arg <= -PI {
            arg = PI;
        }
        out.push((arg + 2.0 * PI * *w as f64) / (2.0 * PI));
    }
    Ok(ActionVector(out))
}

/// e^{2πi I_k} per cycle.
pub fn action_to_holonomy(i: &ActionVector) -> Vec<Complex64> {
    i.0.iter().map(|ik| Complex64::from_polar(1.0, 2.0 * PI * ik)).collect()
}

/// Spectrum change n ↦ Z⁻ᵀ n (exact).
pub fn lattice_action(z: &UnimodularMatrix, n: &QuantumNumberVector) -> Result<QuantumNumberVector, LatticeError> {
    let v = pair2(&n.0)?;
    Ok(z.inverse_transpose().apply(v).into())
}

/// Row-vector change I ↦ I·Z⁻¹. Exact for integer entries below 2⁵³.
pub fn action_coordinate_change(z: &UnimodularMatrix, i: &ActionVector) -> Result<ActionVector, LatticeError> {
    let r = pair2(&i.0)?;
    Ok(z.inverse().apply_row(r).into())
}

/// Integer counterpart of [`action_coordinate_change`].
pub fn action_coordinate_change_int(z: &UnimodularMatrix, i: [i64; 2]) -> [i64; 2] {
    let inv = z.inverse().entries();
    [i[0] * inv[0][0] + i[1] * inv[1][0], i[0] * inv[0][1] + i[1] * inv[1][1]]
}

/// ⟨I, n⟩ = Σ I_k n_k.
pub fn pairing(i: &ActionVector, n: &QuantumNumberVector) -> Result<f64, LatticeError> {
    if i.dim() != n.dim() {
        return Err(LatticeError::Dimension {
            expected: i.dim(),
            got: n.dim(),
        });
    }
    Ok(i.0.iter().zip(&n.0).map(|(a, b)| a * *b as f64).sum())
}

pub fn pairing_int(i: [i64; 2], n: [i64; 2]) -> i64 {
    i[0] * n[0] + i[1] * n[1]
}

/// Multiplication by e^{i s·φ}: χ_n ↦ χ_{n+s}.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CharacterShift(pub [i64; 2]);

impl CharacterShift {
    /// U = e^{−iφ₂}, the shift for which U(−i∂_{φ₂})U⁻¹ = −i∂_{φ₂} + Id.
    pub const UNIT: Self = Self([0, -1]);

    pub fn apply(&self, n: [i64; 2]) -> [i64; 2] {
        [n[0] + self.0[0], n[1] + self.0[1]]
    }

    pub fn inverse(&self) -> Self {
        Self([-self.0[0], -self.0[1]])
    }

    pub fn pow(&self, k: i64) -> Self {
        Self([self.0[0] * k, self.0[1] * k])
    }

    /// Eigenvalue of U∘(−i∂_{φ₂})∘U⁻¹ on χ_n.
    ///
    /// U⁻¹ sends χ_n to χ_{n−s}, the derivative reads off n₂ − s₂, and U
    /// maps back to χ_n without touching the scalar.
    pub fn conjugated_eigenvalue(&self, n: [i64; 2]) -> i64 {
        self.inverse().apply(n)[1]
    }
}

/// Checks U∘(−i∂_{φ₂})∘U⁻¹ = −i∂_{φ₂} + Id on χ_n.
pub fn shift_conjugation_check(n: &QuantumNumberVector) -> Result<bool, LatticeError> {
    let v = pair2(&n.0)?;
    Ok(CharacterShift::UNIT.conjugated_eigenvalue(v) == v[1] + 1)
}
