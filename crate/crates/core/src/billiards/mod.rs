//! The four billiard models as twist systems over a support-function domain.
//!
//! Every model is parametrized by the support angle `φ` (the direction of the
//! outer normal), so all share one configuration space with period `2π`:
//!
//! | model      | S(φ0, φ1)                                              | gap window |
//! |------------|--------------------------------------------------------|------------|
//! | birkhoff   | `−2 h((φ0+φ1)/2) sin((φ1−φ0)/2)`                       | (0, 2π)    |
//! | symplectic | `−½ ω(γ(φ0), γ(φ1))`                                   | (0, π)     |
//! | outer      | `(2 h0 h1 − (h0² + h1²) cos Δ) / (2 sin Δ)`            | (0, π)     |
//! | fourth     | `h'(φ1) − h'(φ0) + (h(φ0) + h(φ1)) tan(Δ/2)`           | (0, π)     |
//!
//! The outer summand is the area of the quadrilateral `O, γ(φ0), M, γ(φ1)`
//! where `M` is the intersection of the two tangent lines, up to the
//! telescoping term `½(h h')(φ1) − ½(h h')(φ0)`, which cancels in every
//! periodic sum. Periodic outer actions therefore equal the area of the
//! circumscribed polygon.

mod forward;

pub use forward::{bounce_angle, forward_map, initial_state, iterate_orbit, MapState};

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::geometry::{normal, polygon_area, tangent, SupportDomain, Vec2};
use crate::jet::Jet;
use crate::twist::{Configuration, TwistSystem};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ModelTag {
    Birkhoff,
    Symplectic,
    Outer,
    Fourth,
}

impl ModelTag {
    pub const ALL: [ModelTag; 4] = [ModelTag::Birkhoff, ModelTag::Symplectic, ModelTag::Outer, ModelTag::Fourth];

    pub fn as_str(&self) -> &'static str {
        match self {
            ModelTag::Birkhoff => "birkhoff",
            ModelTag::Symplectic => "symplectic",
            ModelTag::Outer => "outer",
            ModelTag::Fourth => "fourth",
        }
    }

    pub fn max_gap(&self) -> f64 {
        match self {
            ModelTag::Birkhoff => 2.0 * PI,
            _ => PI,
        }
    }

    /// Whether `ρ` is inside the model's range of rotation numbers.
    pub fn accepts(&self, rho: f64) -> bool {
        match self {
            ModelTag::Birkhoff => rho > 0.0 && rho <= 0.5,
            _ => rho > 0.0 && rho < 0.5,
        }
    }
}

impl fmt::Display for ModelTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for ModelTag {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "birkhoff" => Ok(ModelTag::Birkhoff),
            "symplectic" | "symp" => Ok(ModelTag::Symplectic),
            "outer" => Ok(ModelTag::Outer),
            "fourth" | "4th" => Ok(ModelTag::Fourth),
            _ => Err(Error::Parse(format!("unknown model '{s}'"))),
        }
    }
}

/// A billiard model over a fixed domain.
#[derive(Debug, Clone, PartialEq)]
pub struct BilliardSystem {
    domain: SupportDomain,
    model: ModelTag,
}

pub fn make_system(dom: &SupportDomain, tag: ModelTag) -> BilliardSystem {
    BilliardSystem { domain: dom.clone(), model: tag }
}

impl BilliardSystem {
    pub fn domain(&self) -> &SupportDomain {
        &self.domain
    }

    pub fn model(&self) -> ModelTag {
        self.model
    }

    fn support(&self, theta: Jet) -> (Jet, Jet) {
        let [h, dh, d2h, d3h] = self.domain.derivs(theta.v);
        (theta.compose(h, dh, d2h), theta.compose(dh, d2h, d3h))
    }
}

impl TwistSystem for BilliardSystem {
    fn period(&self) -> f64 {
        2.0 * PI
    }

    fn gap_window(&self) -> (f64, f64) {
        (0.0, self.model.max_gap())
    }

    fn jet(&self, x0: f64, x1: f64) -> Jet {
        let a = Jet::var(x0, 0);
        let b = Jet::var(x1, 1);
        let d = b - a;
        match self.model {
            ModelTag::Birkhoff => {
                let (h, _) = self.support((a + b) * 0.5);
                -(h * (d * 0.5).sin()).scale(2.0)
            }
            ModelTag::Symplectic => {
                let (h0, dh0) = self.support(a);
                let (h1, dh1) = self.support(b);
                let (c0, s0, c1, s1) = (a.cos(), a.sin(), b.cos(), b.sin());
                let x0 = h0 * c0 - dh0 * s0;
                let y0 = h0 * s0 + dh0 * c0;
                let x1 = h1 * c1 - dh1 * s1;
                let y1 = h1 * s1 + dh1 * c1;
                (x0 * y1 - y0 * x1).scale(-0.5)
            }
            ModelTag::Outer => {
                let (h0, _) = self.support(a);
                let (h1, _) = self.support(b);
                let num = (h0 * h1).scale(2.0) - (h0 * h0 + h1 * h1) * d.cos();
                num / d.sin().scale(2.0)
            }
            ModelTag::Fourth => {
                let (h0, dh0) = self.support(a);
                let (h1, dh1) = self.support(b);
                dh1 - dh0 + (h0 + h1) * (d * 0.5).tan()
            }
        }
    }
}

/// Closed-form β of the unit disk.
pub fn beta_disk(tag: ModelTag, rho: f64) -> Result<f64> {
    if !tag.accepts(rho) {
        return Err(Error::InvalidRotation(format!("ρ = {rho} out of range for {tag}")));
    }
    Ok(match tag {
        ModelTag::Birkhoff => -2.0 * (PI * rho).sin(),
        ModelTag::Symplectic => -0.5 * (2.0 * PI * rho).sin(),
        ModelTag::Outer => (PI * rho).tan(),
        ModelTag::Fourth => 2.0 * (PI * rho).tan(),
    })
}

/// Intersection of the tangent lines with normal angles `t0` and `t1`.
pub fn tangent_intersection(dom: &SupportDomain, t0: f64, t1: f64) -> Result<Vec2> {
    let d = t1 - t0;
    let sd = d.sin();
    if !(d > 0.0 && d < PI) {
        return Err(Error::GapViolation { index: 0, gap: d, lo: 0.0, hi: PI });
    }
    let (h0, h1) = (dom.eval(t0, 0), dom.eval(t1, 0));
    Ok(Vec2::new(h0 * t1.sin() - h1 * t0.sin(), h1 * t0.cos() - h0 * t1.cos()) / sd)
}

#[derive(Debug, Clone, PartialEq)]
pub struct OuterPolygon {
    /// `M_k` lies on the tangent lines at `φ_k` and `φ_{k+1}`.
    pub vertices: Vec<Vec2>,
    pub area: f64,
}

/// Circumscribed polygon cut out by the tangent lines at the configuration.
pub fn outer_polygon(dom: &SupportDomain, cfg: &Configuration) -> Result<OuterPolygon> {
    let q = cfg.len() as isize;
    let vertices = (0..q)
        .map(|k| {
            tangent_intersection(dom, cfg.x(k), cfg.x(k + 1)).map_err(|e| match e {
                Error::GapViolation { gap, lo, hi, .. } => Error::GapViolation { index: k as usize, gap, lo, hi },
                e => e,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let area = polygon_area(&vertices);
    Ok(OuterPolygon { vertices, area })
}

/// Bounce points of a Birkhoff configuration.
///
/// In the Birkhoff generating function `φ_k` is the normal direction of a
/// chord, not a point of the boundary: the chords with normals `φ_k` and
/// `φ_{k+1}` meet on the boundary where its normal bisects them, at
/// `γ((φ_k + φ_{k+1})/2)`.
pub fn bounce_polygon(dom: &SupportDomain, cfg: &Configuration) -> Vec<Vec2> {
    (0..cfg.len() as isize).map(|k| dom.point(0.5 * (cfg.x(k) + cfg.x(k + 1)))).collect()
}

/// The points `γ(φ_k)`: vertices of the inscribed symplectic polygon, or
/// tangency points of the circumscribed outer polygon.
pub fn boundary_polygon(dom: &SupportDomain, cfg: &Configuration) -> Vec<Vec2> {
    cfg.points.iter().map(|&p| dom.point(p)).collect()
}

/// Point of `ray` from `γ(φ)` along the tangent line, used by orbit dumps.
pub fn tangent_line_point(dom: &SupportDomain, phi: f64, s: f64) -> Vec2 {
    dom.point(phi) + s * tangent(phi)
}

/// Signed distance of `x` beyond the tangent line at `φ`.
pub fn support_excess(dom: &SupportDomain, phi: f64, x: &Vec2) -> f64 {
    normal(phi).dot(x) - dom.eval(phi, 0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{make_named, polygon_perimeter, NamedFamily};

    fn disk() -> SupportDomain {
        SupportDomain::disk(1.0).unwrap()
    }

    #[test]
    fn generating_function_examples() {
        let b = make_system(&disk(), ModelTag::Birkhoff);
        assert!((b.value(0.0, 2.0 * PI / 3.0) + 3f64.sqrt()).abs() < 1e-14);
        let s = make_system(&disk(), ModelTag::Symplectic);
        assert!((s.value(0.0, PI / 2.0) + 0.5).abs() < 1e-14);
        let f = make_system(&disk(), ModelTag::Fourth);
        assert!((f.value(0.0, 2.0 * PI / 3.0) - 2.0 * 3f64.sqrt()).abs() < 1e-13);
        let o = make_system(&disk(), ModelTag::Outer);
        assert!((o.value(0.0, PI / 2.0) - 1.0).abs() < 1e-14);
    }

    #[test]
    fn disk_closed_forms() {
        assert!((beta_disk(ModelTag::Birkhoff, 1.0 / 3.0).unwrap() + 3f64.sqrt()).abs() < 1e-15);
        assert!((beta_disk(ModelTag::Outer, 1.0 / 3.0).unwrap() - 3f64.sqrt()).abs() < 1e-15);
        assert!((beta_disk(ModelTag::Fourth, 0.25).unwrap() - 2.0).abs() < 1e-15);
        assert!(beta_disk(ModelTag::Outer, 0.5).is_err());
        assert!(beta_disk(ModelTag::Birkhoff, 0.0).is_err());
    }

    #[test]
    fn outer_polygon_of_disk() {
        let tri = outer_polygon(&disk(), &Configuration::equispaced(1, 3, 2.0 * PI, 0.3)).unwrap();
        assert!((tri.area - 3.0 * 3f64.sqrt()).abs() < 1e-13);
        let sq = outer_polygon(&disk(), &Configuration::equispaced(1, 4, 2.0 * PI, 0.0)).unwrap();
        assert!((sq.area - 4.0).abs() < 1e-13);
        assert!((polygon_perimeter(&sq.vertices) - 8.0).abs() < 1e-13);
    }

    #[test]
    fn vertices_lie_on_their_tangent_lines() {
        let dom = make_named(NamedFamily::Gutkin { n: 3, eps: 0.04 }).unwrap();
        let cfg = Configuration::new(vec![0.1, 1.9, 4.0, 5.1], 1, 2.0 * PI);
        let poly = outer_polygon(&dom, &cfg).unwrap();
        for (k, m) in poly.vertices.iter().enumerate() {
            assert!(support_excess(&dom, cfg.x(k as isize), m).abs() < 1e-12);
            assert!(support_excess(&dom, cfg.x(k as isize + 1), m).abs() < 1e-12);
        }
    }

    #[test]
    fn outer_gap_violation() {
        let cfg = Configuration::new(vec![0.0, 3.5], 1, 2.0 * PI);
        assert!(matches!(outer_polygon(&disk(), &cfg), Err(Error::GapViolation { .. })));
    }
}
