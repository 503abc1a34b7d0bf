pub mod braid;
pub mod curve;
pub mod gate;
pub mod pendulum;
pub mod theta;
pub mod verify;

use monodromy_core::thetafn::ModularParameter;
use num_complex::Complex64;

use crate::config::Failure;

pub fn modular(tau: Complex64) -> Result<ModularParameter, Failure> {
    ModularParameter::new(tau).map_err(|e| Failure::usage(format!("tau = {tau}: {e}")))
}

pub fn fmt_c(z: Complex64) -> String {
    format!("{:.16e}{:+.16e}i", z.re, z.im)
}
