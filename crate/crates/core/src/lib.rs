//! Numerics for Hamiltonian monodromy: Jacobi theta functions, Weierstrass
//! curves and Carlson integrals, root braiding, SL(2, Z) bookkeeping, and
//! the spherical-pendulum circuit that certifies a unit shift of the
//! rotation number.

// `!(x < tol)` is used on purpose: a NaN residual must fail the check.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod braidtrack;
pub mod bslattice;
pub mod monodromy;
pub mod pendulum;
pub mod quad;
pub mod thetafn;
pub mod weierstrass;

pub use monodromy::{PhaseGate, UnimodularMatrix};
pub use thetafn::ModularParameter;
pub use weierstrass::{CubicPoly, CurveData};
