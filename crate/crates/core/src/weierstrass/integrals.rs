//! Complete elliptic integrals between consecutive real roots of a cubic,
//! reduced to Carlson forms.
//!
//! For roots a < b < c and t ∈ (a, b) the substitution
//! t = b − (b − a)(c − b)/(s + c − b), s ∈ (0, ∞), turns
//!
//! ```text
//! ∫_a^b dt / √((t−a)(b−t)(c−t))          = 2 R_F(0, c−b, c−a)
//! ∫_a^b dt / ((t−p) √((t−a)(b−t)(c−t)))  = [2 R_F(0, c−b, c−a)
//!                                           + ⅔ (c−b−q) R_J(0, c−b, c−a, q)] / (b−p)
//! ```
//!
//! with q = (c−b)(a−p)/(b−p). For any pole p outside [a, b] (including
//! b < p < c), q > 0, so the strict R_J domain suffices.

use super::carlson::{carlson_rf, carlson_rj};
use super::{CubicPoly, CurveError};

/// Gaps describing the segment [a, b] of a cubic with third root c > b.
///
/// Callers that know the gaps more accurately than the roots themselves
/// (e.g. a root sitting 1e-9 away from a pole) should build this directly.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Segment {
    /// c − b
    pub c_minus_b: f64,
    /// c − a
    pub c_minus_a: f64,
    /// |leading coefficient|
    pub lead: f64,
}

impl Segment {
    /// ∫_a^b dx / √(lead·(x−a)(b−x)(c−x)).
    pub fn first_kind(&self) -> Result<f64, CurveError> {
        Ok(2.0 * carlson_rf(0.0, self.c_minus_b, self.c_minus_a)? / self.lead.sqrt())
    }

    /// ∫_a^b dx / ((x − p) √(lead·(x−a)(b−x)(c−x))), given a − p and b − p
    /// (same sign, both nonzero).
    pub fn third_kind(&self, a_minus_p: f64, b_minus_p: f64) -> Result<f64, CurveError> {
        if a_minus_p == 0.0 || b_minus_p == 0.0 || a_minus_p.signum() != b_minus_p.signum() {
            return Err(CurveError::PoleOnPath { a_minus_p, b_minus_p });
        }
        let q = self.c_minus_b * a_minus_p / b_minus_p;
        let rf = carlson_rf(0.0, self.c_minus_b, self.c_minus_a)?;
        let rj = carlson_rj(0.0, self.c_minus_b, self.c_minus_a, q)?;
        let bracket = 2.0 * rf + (2.0 / 3.0) * (self.c_minus_b - q) * rj;
        Ok(bracket / (b_minus_p * self.lead.sqrt()))
    }
}

/// Which side of the interval the third root lies on.
enum Placement {
    /// c > b; poly = lead·(x−a)(b−x)(c−x), lead > 0.
    Above(Segment),
    /// c < a; mirrored by x ↦ −x.
    Below(Segment),
}

struct ResolvedInterval {
    a: f64,
    b: f64,
    placement: Placement,
}

fn resolve(limits: (f64, f64), poly: &CubicPoly) -> Result<ResolvedInterval, CurveError> {
    let (a, b) = limits;
    if !poly.is_real() {
        return Err(CurveError::Domain("elliptic integrals need a real cubic".into()));
    }
    let roots = poly.real_roots().ok_or(CurveError::RootOrder {
        a,
        b,
        reason: "cubic does not have three distinct real roots",
    })?;
    let scale = roots.iter().fold(1.0f64, |m, r| m.max(r.abs()));
    let tol = 1e-9 * scale;
    let matches = |x: f64, r: f64| (x - r).abs() <= tol;
    let consecutive = (matches(a, roots[0]) && matches(b, roots[1])) || (matches(a, roots[1]) && matches(b, roots[2]));
    if !(a < b) || !consecutive {
        return Err(CurveError::RootOrder {
            a,
            b,
            reason: "limits are not consecutive roots of the cubic",
        });
    }
    let [c3, c2, ..] = poly.coefficients().map(|c| c.re);
    // Vieta gives the remaining root without another root solve.
    let c = -c2 / c3 - a - b;
    let lead = c3;
    if c > b {
        if lead < 0.0 {
            return Err(CurveError::NegativeOnInterval { a, b });
        }
        Ok(ResolvedInterval {
            a,
            b,
            placement: Placement::Above(Segment {
                c_minus_b: c - b,
                c_minus_a: c - a,
                lead,
            }),
        })
    } else {
        if lead > 0.0 {
            return Err(CurveError::NegativeOnInterval { a, b });
        }
        // x ↦ −x: interval (−b, −a), third root −c > −a.
        Ok(ResolvedInterval {
            a,
            b,
            placement: Placement::Below(Segment {
                c_minus_b: a - c,
                c_minus_a: b - c,
                lead: -lead,
            }),
        })
    }
}

/// ∫_a^b dx / √poly(x) for consecutive real roots a < b with poly > 0 on (a, b).
pub fn elliptic_first(limits: (f64, f64), poly: &CubicPoly) -> Result<f64, CurveError> {
    match resolve(limits, poly)?.placement {
        Placement::Above(seg) | Placement::Below(seg) => seg.first_kind(),
    }
}

/// ∫_a^b dx / ((x − c) √poly(x)) for consecutive real roots a < b, pole c ∉ [a, b].
pub fn elliptic_third(limits: (f64, f64), poly: &CubicPoly, pole: f64) -> Result<f64, CurveError> {
    let r = resolve(limits, poly)?;
    if pole >= r.a && pole <= r.b {
        return Err(CurveError::PoleOnPath {
            a_minus_p: r.a - pole,
            b_minus_p: r.b - pole,
        });
    }
    match r.placement {
        Placement::Above(seg) => seg.third_kind(r.a - pole, r.b - pole),
        // Under x = −y the pole moves to −pole and the integrand changes sign;
        // the mirrored limits are (−b, −a).
        Placement::Below(seg) => Ok(-seg.third_kind(-r.b + pole, -r.a + pole)?),
    }
}
