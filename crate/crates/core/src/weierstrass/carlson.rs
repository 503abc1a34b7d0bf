//! Carlson symmetric elliptic integrals R_F, R_J and R_C by duplication.
//!
//! ```text
//! R_F(x,y,z)   = ½ ∫_0^∞ dt / √((t+x)(t+y)(t+z))
//! R_J(x,y,z,p) = 3/2 ∫_0^∞ dt / ((t+p) √((t+x)(t+y)(t+z)))
//! R_C(x,y)     = ½ ∫_0^∞ dt / ((t+y) √(t+x))
//! ```
//!
//! The truncation thresholds follow Carlson (1995) with r = 1e-16, which
//! puts the series remainder well below 1e-14 relative.

use super::CurveError;

const R_TOL: f64 = 1e-16;
const MAX_ITER: usize = 60;

/// How [`carlson_rj_with`] treats a negative fourth argument.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum RjMode {
    /// p > 0 only.
    #[default]
    Strict,
    /// p < 0 is accepted and the Cauchy principal value is returned.
    PrincipalValue,
}

fn domain(msg: String) -> CurveError {
    CurveError::Domain(msg)
}

fn check_rf_args(x: f64, y: f64, z: f64) -> Result<(), CurveError> {
    if !(x.is_finite() && y.is_finite() && z.is_finite()) || x < 0.0 || y < 0.0 || z < 0.0 {
        return Err(domain(format!(
            "R_F needs finite non-negative arguments, got ({x}, {y}, {z})"
        )));
    }
    let zeros = [x, y, z].iter().filter(|v| **v == 0.0).count();
    if zeros > 1 {
        return Err(domain(format!(
            "R_F allows at most one zero argument, got ({x}, {y}, {z})"
        )));
    }
    Ok(())
}

/// R_F(x, y, z) for x, y, z ≥ 0 with at most one of them zero.
pub fn carlson_rf(x: f64, y: f64, z: f64) -> Result<f64, CurveError> {
    check_rf_args(x, y, z)?;
    Ok(rf_unchecked(x, y, z))
}

pub(crate) fn rf_unchecked(x: f64, y: f64, z: f64) -> f64 {
    let (mut x, mut y, mut z) = (x, y, z);
    let a0 = (x + y + z) / 3.0;
    let q = (3.0 * R_TOL).powf(-1.0 / 6.0) * (a0 - x).abs().max((a0 - y).abs()).max((a0 - z).abs());
    let mut a = a0;
    let mut scale = 1.0;
    for _ in 0..MAX_ITER {
        if q * scale < a.abs() {
            break;
        }
        let (sx, sy, sz) = (x.sqrt(), y.sqrt(), z.sqrt());
        let lambda = sx * sy + sx * sz + sy * sz;
        x = 0.25 * (x + lambda);
        y = 0.25 * (y + lambda);
        z = 0.25 * (z + lambda);
        a = 0.25 * (a + lambda);
        scale *= 0.25;
    }
    // a − x_m = 4^{−m}(a0 − x0), so these are Carlson's normalised deviations.
    let xx = (a - x) / a;
    let yy = (a - y) / a;
    let zz = -(xx + yy);
    let e2 = xx * yy - zz * zz;
    let e3 = xx * yy * zz;
    (1.0 - e2 / 10.0 + e3 / 14.0 + e2 * e2 / 24.0 - 3.0 * e2 * e3 / 44.0) / a.sqrt()
}

/// R_C(x, y) for x ≥ 0, y ≠ 0. Negative y yields the Cauchy principal value.
pub fn carlson_rc(x: f64, y: f64) -> Result<f64, CurveError> {
    if !(x.is_finite() && y.is_finite()) || x < 0.0 || y == 0.0 {
        return Err(domain(format!("R_C needs x >= 0 and y != 0, got ({x}, {y})")));
    }
    if y > 0.0 {
        Ok(rc_positive(x, y))
    } else {
        Ok((x / (x - y)).sqrt() * rc_positive(x - y, -y))
    }
}

fn rc_positive(x: f64, y: f64) -> f64 {
    let (mut x, mut y) = (x, y);
    let a0 = (x + 2.0 * y) / 3.0;
    let q = (3.0 * R_TOL).powf(-1.0 / 8.0) * (a0 - x).abs();
    let mut a = a0;
    let mut scale = 1.0;
    for _ in 0..MAX_ITER {
        if q * scale < a.abs() {
            break;
        }
        let lambda = 2.0 * x.sqrt() * y.sqrt() + y;
        x = 0.25 * (x + lambda);
        y = 0.25 * (y + lambda);
        a = 0.25 * (a + lambda);
        scale *= 0.25;
    }
    let s = (y - a) / a;
    let s2 = s * s;
    let poly = 1.0
        + s2 * (3.0 / 10.0)
        + s2 * s * (1.0 / 7.0)
        + s2 * s2 * (3.0 / 8.0)
        + s2 * s2 * s * (9.0 / 22.0)
        + s2 * s2 * s2 * (159.0 / 208.0)
        + s2 * s2 * s2 * s * (9.0 / 8.0);
    poly / a.sqrt()
}

/// R_J(x, y, z, p) on the strict domain (p > 0).
pub fn carlson_rj(x: f64, y: f64, z: f64, p: f64) -> Result<f64, CurveError> {
    carlson_rj_with(x, y, z, p, RjMode::Strict)
}

/// R_J(x, y, z, p); with [`RjMode::PrincipalValue`] a negative p is
/// accepted and the Cauchy principal value returned.
pub fn carlson_rj_with(x: f64, y: f64, z: f64, p: f64, mode: RjMode) -> Result<f64, CurveError> {
    check_rf_args(x, y, z)?;
    if !p.is_finite() || p == 0.0 {
        return Err(domain(format!("R_J needs finite nonzero p, got {p}")));
    }
    if p > 0.0 {
        return Ok(rj_positive(x, y, z, p));
    }
    if mode == RjMode::Strict {
        return Err(domain(format!(
            "R_J with p = {p} < 0 requires the principal-value mode"
        )));
    }
    // Reduce to positive fourth argument (Carlson 1995):
    // (y − p) R_J(x,y,z,p) = (q − y) R_J(x,y,z,q) − 3 R_F + 3 R_C(xz/y, pq/y),
    // with x ≤ y ≤ z and q = y + (z − y)(y − x)/(y − p).
    let mut v = [x, y, z];
    v.sort_by(f64::total_cmp);
    let [xs, ys, zs] = v;
    if ys == 0.0 {
        return Err(domain("R_J principal value needs at most one zero argument".into()));
    }
    let q = ys + (zs - ys) * (ys - xs) / (ys - p);
    let rj_q = rj_positive(xs, ys, zs, q);
    let rf = rf_unchecked(xs, ys, zs);
    let rc = carlson_rc(xs * zs / ys, p * q / ys)?;
    Ok(((q - ys) * rj_q - 3.0 * rf + 3.0 * rc) / (ys - p))
}

fn rj_positive(x: f64, y: f64, z: f64, p: f64) -> f64 {
    let (mut x, mut y, mut z, mut p) = (x, y, z, p);
    let a0 = (x + y + z + 2.0 * p) / 5.0;
    let delta = (p - x) * (p - y) * (p - z);
    let q = (0.25 * R_TOL).powf(-1.0 / 6.0)
        * (a0 - x)
            .abs()
            .max((a0 - y).abs())
            .max((a0 - z).abs())
            .max((a0 - p).abs());
    let mut a = a0;
    let mut scale = 1.0; // 4^{-m}
    let mut sum = 0.0;
    for _ in 0..MAX_ITER {
        if q * scale < a.abs() {
            break;
        }
        let (sx, sy, sz, sp) = (x.sqrt(), y.sqrt(), z.sqrt(), p.sqrt());
        let lambda = sx * sy + sx * sz + sy * sz;
        let d = (sp + sx) * (sp + sy) * (sp + sz);
        let e = scale * scale * scale * delta / (d * d);
        sum += scale * rc_one_plus(e) / d;
        x = 0.25 * (x + lambda);
        y = 0.25 * (y + lambda);
        z = 0.25 * (z + lambda);
        p = 0.25 * (p + lambda);
        a = 0.25 * (a + lambda);
        scale *= 0.25;
    }
    let xx = (a - x) / a;
    let yy = (a - y) / a;
    let zz = (a - z) / a;
    let pp = -(xx + yy + zz) / 2.0;
    let e2 = xx * yy + xx * zz + yy * zz - 3.0 * pp * pp;
    let e3 = xx * yy * zz + 2.0 * e2 * pp + 4.0 * pp * pp * pp;
    let e4 = (2.0 * xx * yy * zz + e2 * pp + 3.0 * pp * pp * pp) * pp;
    let e5 = xx * yy * zz * pp * pp;
    let series = 1.0 - 3.0 * e2 / 14.0 + e3 / 6.0 + 9.0 * e2 * e2 / 88.0 - 3.0 * e4 / 22.0 - 9.0 * e2 * e3 / 52.0
        + 3.0 * e5 / 26.0;
    scale * series / (a * a.sqrt()) + 6.0 * sum
}

/// R_C(1, 1 + e) for e > −1, in closed form.
fn rc_one_plus(e: f64) -> f64 {
    if e.abs() < 1e-4 {
        // atan(s)/s or atanh(s)/s series in e = ±s²
        1.0 - e / 3.0 + e * e / 5.0 - e * e * e / 7.0
    } else if e > 0.0 {
        let s = e.sqrt();
        s.atan() / s
    } else {
        let s = (-e).sqrt();
        s.atanh() / s
    }
}
