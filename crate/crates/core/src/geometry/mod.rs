//! Strictly convex planar domains given by a truncated Fourier support function.
//!
//! A domain is stored as `h(φ) = a0 + Σ (a_n cos nφ + b_n sin nφ)`, where
//! `h(φ)` is the distance from the origin to the tangent line with outer
//! normal `(cos φ, sin φ)`. Derivatives of every order are exact, and the
//! boundary point with normal angle `φ` is `h·n(φ) + h'·t(φ)`.

mod affine;
pub mod fourier;
mod named;
mod radon;

pub use affine::{affine_image, AffineMap};
pub use named::{make_named, NamedFamily, PROJECTED_MODES};
pub use radon::{radon_check, RadonReport};

use std::f64::consts::PI;

use nalgebra::Vector2;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type Vec2 = Vector2<f64>;

/// Outer unit normal `(cos φ, sin φ)`.
#[inline]
pub fn normal(phi: f64) -> Vec2 {
    let (s, c) = phi.sin_cos();
    Vec2::new(c, s)
}

/// Counterclockwise unit tangent `(-sin φ, cos φ)`.
#[inline]
pub fn tangent(phi: f64) -> Vec2 {
    let (s, c) = phi.sin_cos();
    Vec2::new(-s, c)
}

/// `ω(a, b)`, the standard area form.
#[inline]
pub fn cross(a: &Vec2, b: &Vec2) -> f64 {
    a.x * b.y - a.y * b.x
}

/// Signed shoelace area of a closed polygon.
pub fn polygon_area(vertices: &[Vec2]) -> f64 {
    let n = vertices.len();
    (0..n)
        .map(|k| cross(&vertices[k], &vertices[(k + 1) % n]))
        .sum::<f64>()
        / 2.0
}

pub fn polygon_perimeter(vertices: &[Vec2]) -> f64 {
    let n = vertices.len();
    (0..n)
        .map(|k| (vertices[(k + 1) % n] - vertices[k]).norm())
        .sum()
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundaryPoint {
    pub phi: f64,
    pub position: Vec2,
    pub tangent: Vec2,
    pub curvature_radius: f64,
}

/// Support function of a strictly convex domain containing the origin.
///
/// Immutable once built; construction validates `h > 0` and `h + h'' > 0`
/// on the validation grid.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "DomainFile", into = "DomainFile")]
pub struct SupportDomain {
    a0: f64,
    modes: Vec<(f64, f64)>,
}

/// On-disk layout: `{"a0": number, "modes": [[a_n, b_n], ...]}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
struct DomainFile {
    a0: f64,
    #[serde(default)]
    modes: Vec<[f64; 2]>,
}

impl TryFrom<DomainFile> for SupportDomain {
    type Error = Error;
    fn try_from(f: DomainFile) -> Result<Self> {
        SupportDomain::new(f.a0, f.modes.into_iter().map(|[a, b]| (a, b)).collect())
    }
}

impl From<SupportDomain> for DomainFile {
    fn from(d: SupportDomain) -> Self {
        DomainFile {
            a0: d.a0,
            modes: d.modes.into_iter().map(|(a, b)| [a, b]).collect(),
        }
    }
}

impl SupportDomain {
    /// Builds and validates a domain. `modes[n-1]` holds `(a_n, b_n)`.
    pub fn new(a0: f64, modes: Vec<(f64, f64)>) -> Result<Self> {
        if !a0.is_finite() || modes.iter().any(|(a, b)| !a.is_finite() || !b.is_finite()) {
            return Err(Error::NonConvex("non-finite coefficient".into()));
        }
        let mut dom = SupportDomain { a0, modes };
        dom.trim();
        let (min_h, min_rho) = dom.grid_minima();
        if min_h <= 0.0 {
            return Err(Error::NonConvex(format!(
                "support function not positive (min h = {min_h:.3e}); origin must lie inside"
            )));
        }
        if min_rho <= 0.0 {
            return Err(Error::NonConvex(format!(
                "radius of curvature not positive (min h + h'' = {min_rho:.3e})"
            )));
        }
        Ok(dom)
    }

    pub fn disk(radius: f64) -> Result<Self> {
        Self::new(radius, Vec::new())
    }

    fn trim(&mut self) {
        while matches!(self.modes.last(), Some(&(a, b)) if a == 0.0 && b == 0.0) {
            self.modes.pop();
        }
    }

    pub fn a0(&self) -> f64 {
        self.a0
    }

    pub fn modes(&self) -> &[(f64, f64)] {
        &self.modes
    }

    /// Highest mode index `N`.
    pub fn max_mode(&self) -> usize {
        self.modes.len()
    }

    /// Number of points of the uniform grid used for invariant checks and
    /// quadrature: `max(1024, 16N)`.
    pub fn grid_len(&self) -> usize {
        1024.max(16 * self.max_mode())
    }

    pub fn grid(&self) -> impl Iterator<Item = f64> {
        let m = self.grid_len();
        (0..m).map(move |j| 2.0 * PI * j as f64 / m as f64)
    }

    /// `h^{(order)}(φ)` from the Fourier sum.
    pub fn eval(&self, phi: f64, order: u32) -> f64 {
        let mut out = if order == 0 { self.a0 } else { 0.0 };
        let (s1, c1) = phi.sin_cos();
        let (mut s, mut c) = (0.0_f64, 1.0_f64);
        for (i, &(a, b)) in self.modes.iter().enumerate() {
            (s, c) = (s * c1 + c * s1, c * c1 - s * s1);
            let n = (i + 1) as f64;
            let (cn, sn) = shift_quarter(c, s, order);
            out += n.powi(order as i32) * (a * cn + b * sn);
        }
        out
    }

    /// `[h, h', h'', h''']` at `φ` in one pass.
    pub fn derivs(&self, phi: f64) -> [f64; 4] {
        let mut out = [self.a0, 0.0, 0.0, 0.0];
        let (s1, c1) = phi.sin_cos();
        let (mut s, mut c) = (0.0_f64, 1.0_f64);
        for (i, &(a, b)) in self.modes.iter().enumerate() {
            (s, c) = (s * c1 + c * s1, c * c1 - s * s1);
            let n = (i + 1) as f64;
            let even = a * c + b * s;
            let odd = b * c - a * s;
            out[0] += even;
            out[1] += n * odd;
            out[2] -= n * n * even;
            out[3] -= n * n * n * odd;
        }
        out
    }

    pub fn boundary_point(&self, phi: f64) -> BoundaryPoint {
        let [h, dh, d2h, _] = self.derivs(phi);
        BoundaryPoint {
            phi,
            position: h * normal(phi) + dh * tangent(phi),
            tangent: tangent(phi),
            curvature_radius: h + d2h,
        }
    }

    pub fn point(&self, phi: f64) -> Vec2 {
        let [h, dh, _, _] = self.derivs(phi);
        h * normal(phi) + dh * tangent(phi)
    }

    /// `∫ h dφ` by the trapezoid rule on the validation grid.
    pub fn perimeter(&self) -> f64 {
        let m = self.grid_len();
        self.grid().map(|p| self.eval(p, 0)).sum::<f64>() * 2.0 * PI / m as f64
    }

    /// `½ ∫ (h² − h'²) dφ` by the trapezoid rule on the validation grid.
    pub fn area(&self) -> f64 {
        let m = self.grid_len();
        self.grid()
            .map(|p| {
                let [h, dh, _, _] = self.derivs(p);
                h * h - dh * dh
            })
            .sum::<f64>()
            * PI
            / m as f64
    }

    /// Closed form `π(a0² + ½ Σ (1 − n²)(a_n² + b_n²))`.
    pub fn area_closed_form(&self) -> f64 {
        let tail: f64 = self
            .modes
            .iter()
            .enumerate()
            .map(|(i, (a, b))| {
                let n = (i + 1) as f64;
                (1.0 - n * n) * (a * a + b * b)
            })
            .sum();
        PI * (self.a0 * self.a0 + 0.5 * tail)
    }

    /// Minimum of `h` and of `h + h''` over the validation grid.
    pub fn grid_minima(&self) -> (f64, f64) {
        self.grid().fold((f64::INFINITY, f64::INFINITY), |(mh, mr), p| {
            let [h, _, d2h, _] = self.derivs(p);
            (mh.min(h), mr.min(h + d2h))
        })
    }

    /// `Σ_{n≥2} (a_n² + b_n²)`: zero exactly for (possibly translated) disks.
    pub fn nontrivial_energy(&self) -> f64 {
        self.modes.iter().skip(1).map(|(a, b)| a * a + b * b).sum()
    }

    /// Homothety about the origin.
    pub fn scaled(&self, lambda: f64) -> Result<Self> {
        Self::new(
            lambda * self.a0,
            self.modes.iter().map(|&(a, b)| (lambda * a, lambda * b)).collect(),
        )
    }

    /// Translation by `v`, which adds `⟨v, n(φ)⟩` to the support function.
    pub fn translated(&self, v: Vec2) -> Result<Self> {
        let mut modes = self.modes.clone();
        if modes.is_empty() {
            modes.push((0.0, 0.0));
        }
        modes[0].0 += v.x;
        modes[0].1 += v.y;
        Self::new(self.a0, modes)
    }

    /// `max |h(φ) + h(φ+π) − 2 a0|` on the grid.
    pub fn width_defect(&self) -> f64 {
        self.grid()
            .map(|p| (self.eval(p, 0) + self.eval(p + PI, 0) - 2.0 * self.a0).abs())
            .fold(0.0, f64::max)
    }

    /// Whether the domain is an ellipse: after removing the translation mode,
    /// `h²` must be a trigonometric polynomial of degree ≤ 2.
    pub fn is_ellipse(&self, tol: f64) -> bool {
        let m = self.grid_len().max(64 * self.max_mode().max(1));
        let (a1, b1) = self.modes.first().copied().unwrap_or((0.0, 0.0));
        let samples: Vec<f64> = (0..m)
            .map(|j| {
                let p = 2.0 * PI * j as f64 / m as f64;
                let g = self.eval(p, 0) - a1 * p.cos() - b1 * p.sin();
                g * g
            })
            .collect();
        let spec = fourier::spectrum(&samples);
        let total: f64 = spec.iter().map(|(a, b)| a * a + b * b).sum::<f64>()
            + fourier::mean(&samples).powi(2);
        let high: f64 = spec.iter().skip(2).map(|(a, b)| a * a + b * b).sum();
        high <= tol * total
    }
}

#[inline]
fn shift_quarter(c: f64, s: f64, order: u32) -> (f64, f64) {
    // (cos(x + kπ/2), sin(x + kπ/2))
    match order % 4 {
        0 => (c, s),
        1 => (-s, c),
        2 => (-c, -s),
        _ => (s, -c),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gutkin4() -> SupportDomain {
        SupportDomain::new(1.0, vec![(0.0, 0.0), (0.0, 0.0), (0.0, 0.0), (0.05, 0.0)]).unwrap()
    }

    #[test]
    fn eval_support_examples() {
        let d = SupportDomain::disk(1.0).unwrap();
        assert_eq!(d.eval(0.7, 0), 1.0);
        let g = gutkin4();
        assert!((g.eval(0.0, 2) + 0.8).abs() < 1e-14);
        assert!((g.eval(PI / 8.0, 1) + 0.2).abs() < 1e-14);
    }

    #[test]
    fn boundary_point_examples() {
        let d = SupportDomain::disk(1.0).unwrap();
        let bp = d.boundary_point(PI / 2.0);
        assert!((bp.position - Vec2::new(0.0, 1.0)).norm() < 1e-15);
        assert_eq!(bp.curvature_radius, 1.0);

        let shifted = SupportDomain::new(2.0, vec![(1.0, 0.0)]).unwrap();
        assert!((shifted.point(0.0) - Vec2::new(3.0, 0.0)).norm() < 1e-15);

        let bp = gutkin4().boundary_point(0.0);
        assert!((bp.position - Vec2::new(1.05, 0.0)).norm() < 1e-15);
        assert!((bp.curvature_radius - 0.25).abs() < 1e-14);
    }

    #[test]
    fn perimeter_and_area_of_simple_domains() {
        let d = SupportDomain::disk(1.0).unwrap();
        assert!((d.perimeter() - 2.0 * PI).abs() < 1e-13);
        assert!((d.area() - PI).abs() < 1e-13);
        let g = gutkin4();
        assert!((g.perimeter() - 2.0 * PI).abs() < 1e-13);
        assert!((g.area() - 0.98125 * PI).abs() < 1e-13);
        assert!((g.area() - g.area_closed_form()).abs() < 1e-13);
    }

    #[test]
    fn invalid_domains_are_rejected() {
        assert!(matches!(SupportDomain::disk(-1.0), Err(Error::NonConvex(_))));
        // h + h'' = 1 - 15·0.1 cos 4φ dips below zero
        let r = SupportDomain::new(1.0, vec![(0.0, 0.0), (0.0, 0.0), (0.0, 0.0), (0.1, 0.0)]);
        assert!(matches!(r, Err(Error::NonConvex(_))));
        // translated so far that the origin leaves the domain
        assert!(SupportDomain::new(1.0, vec![(1.5, 0.0)]).is_err());
    }

    #[test]
    fn json_layout() {
        let d: SupportDomain =
            serde_json::from_str(r#"{"a0": 1.0, "modes": [[0.0, 0.0], [0.01, -0.02]]}"#).unwrap();
        assert_eq!(d.modes(), &[(0.0, 0.0), (0.01, -0.02)]);
        let s = serde_json::to_string(&d).unwrap();
        assert_eq!(s, r#"{"a0":1.0,"modes":[[0.0,0.0],[0.01,-0.02]]}"#);
        let bad: std::result::Result<SupportDomain, _> =
            serde_json::from_str(r#"{"a0": -1.0, "modes": []}"#);
        assert!(bad.is_err());
    }

    #[test]
    fn ellipse_detection() {
        assert!(SupportDomain::disk(2.0).unwrap().is_ellipse(1e-12));
        assert!(!gutkin4().is_ellipse(1e-12));
    }
}
