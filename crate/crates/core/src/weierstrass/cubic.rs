use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::CurveError;

/// c3·x³ + c2·x² + c1·x + c0 with c3 ≠ 0.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CubicPoly {
    c3: Complex64,
    c2: Complex64,
    c1: Complex64,
    c0: Complex64,
}

impl CubicPoly {
    pub fn new(c3: Complex64, c2: Complex64, c1: Complex64, c0: Complex64) -> Result<Self, CurveError> {
        if c3 == Complex64::new(0.0, 0.0) {
            return Err(CurveError::NotCubic);
        }
        if ![c3, c2, c1, c0].iter().all(|c| c.is_finite()) {
            return Err(CurveError::Domain("cubic coefficients must be finite".into()));
        }
        Ok(Self { c3, c2, c1, c0 })
    }

    pub fn real(c3: f64, c2: f64, c1: f64, c0: f64) -> Result<Self, CurveError> {
        Self::new(c3.into(), c2.into(), c1.into(), c0.into())
    }

    /// lead·(x − r0)(x − r1)(x − r2).
    pub fn from_roots(lead: Complex64, roots: [Complex64; 3]) -> Result<Self, CurveError> {
        let [a, b, c] = roots;
        Self::new(
            lead,
            -lead * (a + b + c),
            lead * (a * b + a * c + b * c),
            -lead * a * b * c,
        )
    }

    /// The Weierstrass cubic 4x³ − g2·x − g3.
    pub fn weierstrass(g2: Complex64, g3: Complex64) -> Self {
        Self {
            c3: Complex64::new(4.0, 0.0),
            c2: Complex64::new(0.0, 0.0),
            c1: -g2,
            c0: -g3,
        }
    }

    /// Coefficients (c3, c2, c1, c0).
    pub fn coefficients(&self) -> [Complex64; 4] {
        [self.c3, self.c2, self.c1, self.c0]
    }

    pub fn is_real(&self) -> bool {
        self.coefficients().iter().all(|c| c.im == 0.0)
    }

    pub fn eval(&self, x: Complex64) -> Complex64 {
        ((self.c3 * x + self.c2) * x + self.c1) * x + self.c0
    }

    fn derivative(&self, x: Complex64) -> Complex64 {
        (3.0 * self.c3 * x + 2.0 * self.c2) * x + self.c1
    }

    /// 18abcd − 4b³d + b²c² − 4ac³ − 27a²d².
    pub fn discriminant(&self) -> Complex64 {
        let (a, b, c, d) = (self.c3, self.c2, self.c1, self.c0);
        18.0 * a * b * c * d - 4.0 * b * b * b * d + b * b * c * c - 4.0 * a * c * c * c - 27.0 * a * a * d * d
    }

    /// All three roots (unordered) by Cardano's formula, polished by Newton.
    pub fn roots(&self) -> [Complex64; 3] {
        if let Some(r) = self.real_roots() {
            return r.map(Complex64::from);
        }
        let b = self.c2 / self.c3;
        let c = self.c1 / self.c3;
        let d = self.c0 / self.c3;
        let shift = -b / 3.0;
        let p = c - b * b / 3.0;
        let q = 2.0 * b * b * b / 27.0 - b * c / 3.0 + d;
        let disc = (q * q / 4.0 + p * p * p / 27.0).sqrt();
        let cand1 = -q / 2.0 + disc;
        let cand2 = -q / 2.0 - disc;
        let u3 = if cand1.norm() >= cand2.norm() { cand1 } else { cand2 };
        let omega = Complex64::from_polar(1.0, 2.0 * PI / 3.0);
        let mut out = [Complex64::new(0.0, 0.0); 3];
        if u3.norm() == 0.0 {
            // p = q = 0: triple root.
            out = [shift; 3];
        } else {
            let u = u3.cbrt();
            let mut w = Complex64::new(1.0, 0.0);
            for slot in out.iter_mut() {
                let uk = u * w;
                *slot = uk - p / (3.0 * uk) + shift;
                w *= omega;
            }
        }
        out.map(|r| self.polish(r))
    }

    fn polish(&self, mut x: Complex64) -> Complex64 {
        let mut fx = self.eval(x);
        for _ in 0..4 {
            let dfx = self.derivative(x);
            if dfx.norm() == 0.0 {
                break;
            }
            let next = x - fx / dfx;
            let fnext = self.eval(next);
            if fnext.norm() >= fx.norm() {
                break;
            }
            x = next;
            fx = fnext;
        }
        x
    }

    /// Ascending real roots when the coefficients are real and the
    /// discriminant is positive (three distinct real roots).
    pub fn real_roots(&self) -> Option<[f64; 3]> {
        if !self.is_real() || self.discriminant().re <= 0.0 {
            return None;
        }
        let a = self.c3.re;
        let b = self.c2.re / a;
        let c = self.c1.re / a;
        let d = self.c0.re / a;
        let shift = -b / 3.0;
        let p = c - b * b / 3.0;
        let q = 2.0 * b * b * b / 27.0 - b * c / 3.0 + d;
        if p >= 0.0 {
            return None;
        }
        let m = 2.0 * (-p / 3.0).sqrt();
        let arg = (3.0 * q / (p * m)).clamp(-1.0, 1.0);
        let phi = arg.acos() / 3.0;
        let mut r = [0.0; 3];
        for (k, slot) in r.iter_mut().enumerate() {
            *slot = m * (phi - 2.0 * PI * k as f64 / 3.0).cos() + shift;
        }
        let mut r = r.map(|x| self.polish(Complex64::from(x)).re);
        r.sort_by(f64::total_cmp);
        Some(r)
    }

    /// Smallest distance between two roots.
    pub fn min_root_gap(roots: &[Complex64; 3]) -> f64 {
        (roots[0] - roots[1])
            .norm()
            .min((roots[0] - roots[2]).norm())
            .min((roots[1] - roots[2]).norm())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: Complex64, b: Complex64, tol: f64) -> bool {
        (a - b).norm() < tol
    }

    #[test]
    fn real_roots_of_known_cubic() {
        let p = CubicPoly::real(4.0, 0.0, -4.0, 0.0).unwrap();
        let r = p.real_roots().unwrap();
        assert!((r[0] + 1.0).abs() < 1e-15 && r[1].abs() < 1e-15 && (r[2] - 1.0).abs() < 1e-15);
    }

    #[test]
    fn complex_roots_of_unity() {
        let p = CubicPoly::real(4.0, 0.0, 0.0, -4.0).unwrap();
        assert!(p.real_roots().is_none());
        let r = p.roots();
        for root in r {
            assert!(close(root * root * root, Complex64::new(1.0, 0.0), 1e-14));
        }
        assert!(CubicPoly::min_root_gap(&r) > 1.7);
    }

    #[test]
    fn complex_coefficients_round_trip() {
        let roots = [
            Complex64::new(1.2, 0.3),
            Complex64::new(-0.7, 1.1),
            Complex64::new(0.1, -2.0),
        ];
        let p = CubicPoly::from_roots(Complex64::new(0.5, -1.5), roots).unwrap();
        let mut found = p.roots();
        for want in roots {
            let (idx, _) = found
                .iter()
                .enumerate()
                .min_by(|a, b| (a.1 - want).norm().total_cmp(&(b.1 - want).norm()))
                .unwrap();
            assert!(close(found[idx], want, 1e-13));
            found[idx] = Complex64::new(f64::NAN, f64::NAN);
        }
    }

    #[test]
    fn rejects_degree_drop() {
        assert!(matches!(CubicPoly::real(0.0, 1.0, 0.0, 0.0), Err(CurveError::NotCubic)));
    }
}
